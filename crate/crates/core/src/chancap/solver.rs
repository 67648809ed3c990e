//! Exact clique search behind every capacity computation.
//!
//! A codebook of size k is admissible when every pair has equivocation at
//! most delta/k, so it is a k-clique in the graph joining compatible pairs at
//! that threshold. Graphs only change when delta/k crosses one of the
//! distinct equivocation values, and the clique number is computed once per
//! distinct graph.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use super::channel::EquivocationTable;
use crate::error::Result;
use crate::ratio::Ratio;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeCheck {
    pub size: usize,
    /// delta / size, the per-pair bound at this size.
    pub threshold: Ratio,
    pub feasible: bool,
}

/// Result of a solve in terms of table indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverOutcome {
    pub count: usize,
    pub witness: Vec<usize>,
    /// Sizes in descending order.
    pub sizes: Vec<SizeCheck>,
}

#[derive(Clone, Debug)]
pub(crate) struct CompatGraph {
    adj: Vec<FixedBitSet>,
}

impl CompatGraph {
    /// Joins i != j when e(i, j) <= threshold.
    pub(crate) fn at_threshold(table: &EquivocationTable, threshold: &Ratio) -> Self {
        let n = table.len();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if table.get(i, j) <= threshold {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        CompatGraph { adj }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    fn linked(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    /// Greedy coloring of `cand` in the given order. Returns the vertices
    /// grouped by color with the (1-based) color of each.
    fn color_sort(&self, cand: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in cand {
            match classes.iter_mut().find(|c| c.iter().all(|&u| !self.linked(u, v))) {
                Some(c) => c.push(v),
                None => classes.push(vec![v]),
            }
        }
        let mut verts = Vec::with_capacity(cand.len());
        let mut colors = Vec::with_capacity(cand.len());
        for (c, class) in classes.into_iter().enumerate() {
            for v in class {
                verts.push(v);
                colors.push(c + 1);
            }
        }
        (verts, colors)
    }

    fn color_bound(&self, cand: &[usize]) -> usize {
        self.color_sort(cand).1.last().copied().unwrap_or(0)
    }

    /// Clique number by branch and bound, vertices ordered by degree and
    /// pruned with greedy coloring.
    pub(crate) fn max_clique(&self) -> usize {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&v| Reverse(self.adj[v].count_ones(..)));
        let mut best = 0;
        self.expand(0, order, &mut best);
        best
    }

    fn expand(&self, size: usize, cand: Vec<usize>, best: &mut usize) {
        let (verts, colors) = self.color_sort(&cand);
        for idx in (0..verts.len()).rev() {
            if size + colors[idx] <= *best {
                return;
            }
            let v = verts[idx];
            let next: Vec<usize> = verts[..idx].iter().copied().filter(|&u| self.linked(v, u)).collect();
            if next.is_empty() {
                *best = (*best).max(size + 1);
            } else {
                self.expand(size + 1, next, best);
            }
        }
    }

    /// The lexicographically least k-clique, by index.
    pub(crate) fn least_clique(&self, k: usize) -> Option<Vec<usize>> {
        let mut chosen = Vec::with_capacity(k);
        let all: Vec<usize> = (0..self.len()).collect();
        self.least_from(k, &mut chosen, &all).then_some(chosen)
    }

    fn least_from(&self, k: usize, chosen: &mut Vec<usize>, cand: &[usize]) -> bool {
        if chosen.len() == k {
            return true;
        }
        if chosen.len() + self.color_bound(cand) < k {
            return false;
        }
        for (pos, &v) in cand.iter().enumerate() {
            if chosen.len() + cand.len() - pos < k {
                break;
            }
            let next: Vec<usize> = cand[pos + 1..].iter().copied().filter(|&u| self.linked(v, u)).collect();
            chosen.push(v);
            if self.least_from(k, chosen, &next) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Largest k with a k-subset whose pairwise equivocations are all at most
/// delta/k, plus the lexicographically least such subset.
pub fn solve(table: &EquivocationTable, delta: &Ratio) -> Result<SolverOutcome> {
    table.check_delta(delta)?;
    Ok(solve_unchecked(table, delta))
}

/// `solve` without the upper limit on delta. Only a negative delta is
/// refused; on a finite alphabet the search is well defined for any other.
pub fn solve_unchecked(table: &EquivocationTable, delta: &Ratio) -> SolverOutcome {
    assert!(!delta.is_negative(), "delta must be nonnegative");
    let n = table.len();
    let values = table.distinct_values();
    let threshold = |k: usize| delta / &Ratio::from_u64(k as u64);
    // Index into `values` of the last one admitted at size k; graphs with the
    // same index are identical.
    let key = |k: usize| values.partition_point(|v| *v <= threshold(k));
    let keys: BTreeMap<usize, usize> = (1..=n).map(|k| (k, key(k))).collect();
    let mut distinct: Vec<usize> = keys.values().copied().collect();
    distinct.sort();
    distinct.dedup();
    let omega: BTreeMap<usize, usize> = distinct
        .par_iter()
        .map(|&g| {
            let graph = match g {
                0 => CompatGraph::at_threshold(table, &Ratio::from_int(-1)),
                _ => CompatGraph::at_threshold(table, &values[g - 1]),
            };
            (g, graph.max_clique())
        })
        .collect();

    let sizes: Vec<SizeCheck> = (1..=n)
        .rev()
        .map(|k| SizeCheck {
            size: k,
            threshold: threshold(k),
            feasible: omega[&keys[&k]] >= k,
        })
        .collect();
    let count = sizes.iter().find(|s| s.feasible).map(|s| s.size).unwrap_or(1);
    let witness = CompatGraph::at_threshold(table, &threshold(count))
        .least_clique(count)
        .expect("clique number certifies a clique of this size");
    SolverOutcome { count, witness, sizes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::r;

    fn table(n: usize, heavy: &[(usize, usize, Ratio)]) -> EquivocationTable {
        let mut e = vec![vec![Ratio::zero(); n]; n];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = Ratio::one();
        }
        for (i, j, v) in heavy {
            e[*i][*j] = v.clone();
            e[*j][*i] = v.clone();
        }
        EquivocationTable::new(e, Ratio::one())
    }

    #[test]
    fn all_compatible_gives_full_alphabet() {
        let out = solve(&table(5, &[]), &Ratio::zero()).unwrap();
        assert_eq!(out.count, 5);
        assert_eq!(out.witness, vec![0, 1, 2, 3, 4]);
        assert!(out.sizes.iter().all(|s| s.feasible));
    }

    #[test]
    fn heavy_pair_drops_one_endpoint() {
        let out = solve(&table(4, &[(0, 1, r(1, 2))]), &r(1, 4)).unwrap();
        assert_eq!(out.count, 3);
        assert_eq!(out.witness, vec![0, 2, 3]);
        assert_eq!(
            out.sizes[0],
            SizeCheck {
                size: 4,
                threshold: r(1, 16),
                feasible: false
            }
        );
    }

    #[test]
    fn max_clique_on_five_cycle_is_two() {
        let mut t = table(5, &[]);
        for i in 0..5 {
            for j in 0..5 {
                let adjacent = (i + 1) % 5 == j || (j + 1) % 5 == i;
                if i != j && !adjacent {
                    t.e[i][j] = Ratio::one();
                }
            }
        }
        let g = CompatGraph::at_threshold(&t, &Ratio::zero());
        assert_eq!(g.max_clique(), 2);
        assert_eq!(g.least_clique(2), Some(vec![0, 1]));
        assert_eq!(g.least_clique(3), None);
    }

    #[test]
    fn delta_at_or_above_v_min_is_rejected() {
        assert!(solve(&table(3, &[]), &Ratio::one()).is_err());
        assert!(solve(&table(3, &[]), &r(-1, 2)).is_err());
    }
}
