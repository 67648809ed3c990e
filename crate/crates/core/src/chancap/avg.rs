//! Capacity under an average-overlap budget instead of a per-pair one.
//!
//! The average overlap of a codebook is the sum of e(a, b) over ordered
//! pairs of distinct codewords, divided by 2 |codebook| m(V).

use serde::Serialize;

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, ToPrimitive, Zero};

use super::channel::{BoundChannel, Codebook, EquivocationTable};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::ratio::Ratio;

pub const AVERAGE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AverageCapacity {
    pub delta: Ratio,
    pub count: usize,
    pub bits: Bits,
    pub witness: Codebook,
    pub average_overlap: Ratio,
}

/// Outcome of checking both comparison inequalities at one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AverageBounds {
    pub delta: Ratio,
    pub pairwise_count: usize,
    /// Average-overlap count at delta / (2 m(V)); must be at least `pairwise_count`.
    pub average_at_scaled: usize,
    pub first_holds: bool,
    /// Average-overlap count at delta itself.
    pub average_count: usize,
    /// delta m(V) 2^(2 log2 K + 1) with K the average count, when below m(V).
    pub pairwise_level: Option<Ratio>,
    pub pairwise_at_level: Option<usize>,
    /// None when the level is out of range and the inequality says nothing.
    pub second_holds: Option<bool>,
}

impl BoundChannel {
    pub fn average_overlap(&self, codebook: &Codebook) -> Result<Ratio> {
        let idx: Vec<usize> = codebook
            .points()
            .iter()
            .map(|s| self.channel().index_of(s))
            .collect::<Result<_>>()?;
        let t = self.table();
        let sum: Ratio = idx
            .iter()
            .flat_map(|&a| idx.iter().filter(move |&&b| b != a).map(move |&b| t.get(a, b).clone()))
            .sum();
        Ok(sum / (Ratio::from_u64(2 * idx.len() as u64) * self.v_min()))
    }

    /// Largest codebook whose average overlap is at most `delta`. Every
    /// subset is visited; the witness is the lexicographically least.
    pub fn avg_overlap_capacity(&self, delta: &Ratio) -> Result<AverageCapacity> {
        let n = self.channel().inputs().len();
        if n > AVERAGE_LIMIT {
            return Err(Error::AlphabetTooLarge {
                size: n,
                limit: AVERAGE_LIMIT,
            });
        }
        let (weights, budgets) = integer_form(self.table(), &(delta * &Ratio::from_int(2) * self.v_min()));
        let idx = match (to_i128(&weights), to_i128(std::slice::from_ref(&budgets))) {
            (Some(w), Some(mut b)) => least_largest(&w, &b.remove(0)),
            _ => least_largest(&weights, &budgets),
        };
        let t = self.table();
        let sum: Ratio = idx
            .iter()
            .flat_map(|&a| idx.iter().filter(move |&&b| b != a).map(move |&b| t.get(a, b).clone()))
            .sum();
        let witness = Codebook::new(idx.iter().map(|&i| self.channel().inputs()[i].clone()))?;
        let average_overlap = sum / (Ratio::from_u64(2 * idx.len() as u64) * self.v_min());
        Ok(AverageCapacity {
            delta: delta.clone(),
            count: idx.len(),
            bits: Bits::from_count(idx.len() as u64),
            witness,
            average_overlap,
        })
    }

    pub fn average_bounds(&self, delta: &Ratio) -> Result<AverageBounds> {
        let pairwise_count = self.capacity(delta)?.count;
        let scaled = delta / &(Ratio::from_int(2) * self.v_min());
        let average_at_scaled = self.avg_overlap_capacity(&scaled)?.count;
        let average_count = self.avg_overlap_capacity(delta)?.count;
        let k = Ratio::from_u64(average_count as u64);
        let level = delta * self.v_min() * Ratio::from_int(2) * &k * &k;
        let (pairwise_level, pairwise_at_level, second_holds) = if level < *self.v_min() {
            let c = self.capacity(&level)?.count;
            (Some(level), Some(c), Some(average_count <= c))
        } else {
            (None, None, None)
        };
        Ok(AverageBounds {
            delta: delta.clone(),
            pairwise_count,
            average_at_scaled,
            first_holds: pairwise_count <= average_at_scaled,
            average_count,
            pairwise_level,
            pairwise_at_level,
            second_holds,
        })
    }
}

/// Scales the table by the lcm of its denominators so the search runs on
/// integers. `budgets[k]` is the largest admissible scaled pair sum at size k.
fn integer_form(t: &EquivocationTable, unit: &Ratio) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let n = t.len();
    let lcm = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .fold(BigInt::one(), |acc, (i, j)| acc.lcm(t.get(i, j).denom()));
    let scale = Ratio::from_bigint(lcm);
    let weights = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::zero()
                    } else {
                        (t.get(i, j) * &scale).floor_int()
                    }
                })
                .collect()
        })
        .collect();
    let budgets = (0..=n)
        .map(|k| (unit * &scale * Ratio::from_u64(k as u64)).floor_int())
        .collect();
    (weights, budgets)
}

fn to_i128<R: AsRef<[BigInt]>>(rows: &[R]) -> Option<Vec<Vec<i128>>> {
    rows.iter()
        .map(|row| row.as_ref().iter().map(|x| x.to_i128()).collect())
        .collect()
}

/// Pre-order walk over increasing index sequences, so subsets appear in
/// lexicographic order and the first one of the largest size is the least.
fn least_largest<T>(weights: &[Vec<T>], budgets: &[T]) -> Vec<usize>
where
    T: Clone + PartialOrd + Zero + for<'a> std::ops::Add<&'a T, Output = T>,
{
    fn walk<T>(w: &[Vec<T>], budgets: &[T], start: usize, chosen: &mut Vec<usize>, sum: &T, best: &mut Vec<usize>)
    where
        T: Clone + PartialOrd + Zero + for<'a> std::ops::Add<&'a T, Output = T>,
    {
        let n = w.len();
        if chosen.len() > best.len() && *sum <= budgets[chosen.len()] {
            *best = chosen.clone();
        }
        for v in start..n {
            if chosen.len() + (n - v) <= best.len() {
                return;
            }
            let next = chosen.iter().fold(sum.clone(), |acc, &c| acc + &w[c][v] + &w[v][c]);
            chosen.push(v);
            walk(w, budgets, v + 1, chosen, &next, best);
            chosen.pop();
        }
    }
    let mut best = Vec::new();
    walk(weights, budgets, 0, &mut Vec::new(), &T::zero(), &mut best);
    best
}
