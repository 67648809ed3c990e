//! Capacity of label sets from pairwise equivocations supplied directly,
//! as for robustness or classification structures.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::chancap::{solve, BoundChannel, CapacityResult, Codebook, EquivocationTable};
use crate::error::{Error, Result};
use crate::ratio::Ratio;
use crate::uvcore::Symbol;

/// Symmetric pairwise equivocations over labels, with the bound on delta.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct EquivocationMatrix {
    labels: Vec<Symbol>,
    table: EquivocationTable,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    labels: Vec<Symbol>,
    /// `[a, b, "p/q"]` for each distinct pair; missing pairs are zero.
    entries: Vec<(Symbol, Symbol, Ratio)>,
    v_min: Ratio,
}

impl TryFrom<MatrixRepr> for EquivocationMatrix {
    type Error = Error;
    fn try_from(r: MatrixRepr) -> Result<Self> {
        EquivocationMatrix::new(r.labels, r.entries, r.v_min)
    }
}

impl From<EquivocationMatrix> for MatrixRepr {
    fn from(m: EquivocationMatrix) -> Self {
        let n = m.labels.len();
        let entries = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !m.table.get(i, j).is_zero())
            .map(|(i, j)| (m.labels[i].clone(), m.labels[j].clone(), m.table.get(i, j).clone()))
            .collect();
        MatrixRepr {
            labels: m.labels,
            entries,
            v_min: m.table.v_min().clone(),
        }
    }
}

impl EquivocationMatrix {
    /// Labels are sorted; a pair may be given in either order, and giving
    /// it twice is only allowed with the same value.
    pub fn new<I>(labels: Vec<Symbol>, entries: I, v_min: Ratio) -> Result<Self>
    where
        I: IntoIterator<Item = (Symbol, Symbol, Ratio)>,
    {
        let mut labels = labels;
        labels.sort();
        if labels.is_empty() {
            return Err(Error::InvalidParameter("matrix has no labels".into()));
        }
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(format!("label {} repeats", w[0])));
        }
        let unit = |v: &Ratio| !v.is_negative() && *v <= Ratio::one();
        if !unit(&v_min) || v_min.is_zero() {
            return Err(Error::InvalidParameter(format!("v_min {v_min} is outside (0, 1]")));
        }
        let index = |s: &Symbol| labels.binary_search(s).map_err(|_| Error::UnknownSymbol(s.to_string()));
        let mut given: BTreeMap<(usize, usize), Ratio> = BTreeMap::new();
        for (a, b, v) in entries {
            let (i, j) = (index(&a)?, index(&b)?);
            if i == j {
                return Err(Error::SamePoint(a.to_string()));
            }
            if !unit(&v) {
                return Err(Error::InvalidParameter(format!(
                    "entry ({a}, {b}) = {v} is outside [0, 1]"
                )));
            }
            let key = (i.min(j), i.max(j));
            if let Some(old) = given.insert(key, v.clone()) {
                if old != v {
                    return Err(Error::InvalidParameter(format!(
                        "({a}, {b}) is given as both {old} and {v}"
                    )));
                }
            }
        }
        let n = labels.len();
        let mut e = vec![vec![Ratio::zero(); n]; n];
        for ((i, j), v) in given {
            e[i][j] = v.clone();
            e[j][i] = v;
        }
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = v_min.clone();
        }
        Ok(EquivocationMatrix {
            labels,
            table: EquivocationTable::new(e, v_min),
        })
    }

    /// The matrix of pairwise equivocations of a channel.
    pub fn from_channel(bound: &BoundChannel) -> Self {
        EquivocationMatrix {
            labels: bound.channel().inputs().to_vec(),
            table: bound.table().clone(),
        }
    }

    pub fn labels(&self) -> &[Symbol] {
        &self.labels
    }

    pub fn v_min(&self) -> &Ratio {
        self.table.v_min()
    }

    pub fn get(&self, a: &Symbol, b: &Symbol) -> Result<Ratio> {
        if a == b {
            return Err(Error::SamePoint(a.to_string()));
        }
        let index = |s: &Symbol| {
            self.labels
                .binary_search(s)
                .map_err(|_| Error::UnknownSymbol(s.to_string()))
        };
        Ok(self.table.get(index(a)?, index(b)?).clone())
    }

    pub fn table(&self) -> &EquivocationTable {
        &self.table
    }
}

/// Largest label set whose pairs all have equivocation at most delta over
/// its size, with the lexicographically least witness.
pub fn matrix_capacity(em: &EquivocationMatrix, delta: &Ratio) -> Result<CapacityResult> {
    let out = solve(&em.table, delta)?;
    Ok(CapacityResult {
        delta: delta.clone(),
        count: out.count,
        bits: Bits::from_count(out.count as u64),
        witness: Codebook::new(out.witness.iter().map(|&i| em.labels[i].clone()))?,
        per_size_feasibility: out.sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::r;

    fn labels(n: usize) -> Vec<Symbol> {
        (0..n).map(|k| Symbol::new(format!("l{k}"))).collect()
    }

    #[test]
    fn json_round_trip() {
        let em = EquivocationMatrix::new(
            labels(3),
            [(Symbol::new("l0"), Symbol::new("l2"), r(1, 3))],
            Ratio::one(),
        )
        .unwrap();
        let text = serde_json::to_string(&em).unwrap();
        assert_eq!(
            text,
            r#"{"labels":["l0","l1","l2"],"entries":[["l0","l2","1/3"]],"v_min":"1"}"#
        );
        let back: EquivocationMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, em);
        assert_eq!(back.get(&Symbol::new("l2"), &Symbol::new("l0")).unwrap(), r(1, 3));
    }

    #[test]
    fn rejects_bad_entries() {
        let l = |s: &str| Symbol::new(s);
        assert!(EquivocationMatrix::new(labels(2), [(l("l0"), l("l1"), r(3, 2))], Ratio::one()).is_err());
        assert!(EquivocationMatrix::new(labels(2), [(l("l0"), l("l0"), r(1, 2))], Ratio::one()).is_err());
        let clash = [(l("l0"), l("l1"), r(1, 2)), (l("l1"), l("l0"), r(1, 3))];
        assert!(EquivocationMatrix::new(labels(2), clash, Ratio::one()).is_err());
        assert!(EquivocationMatrix::new(vec![l("a"), l("a")], [], Ratio::one()).is_err());
    }
}
