use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::interval::IntervalUnion;
use super::symbol::Symbol;
use crate::error::{Error, Result};
use crate::ratio::Ratio;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroundSet {
    Finite { labels: Vec<Symbol> },
    Intervals { intervals: IntervalUnion },
}

impl GroundSet {
    /// Finite ground with labels put in canonical order; duplicates are an error.
    pub fn finite<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<Symbol>,
    {
        let mut v: Vec<Symbol> = labels.into_iter().map(Into::into).collect();
        v.sort();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGround(format!("duplicate label {}", w[0])));
        }
        Ok(GroundSet::Finite { labels: v })
    }

    pub fn intervals(intervals: IntervalUnion) -> Self {
        GroundSet::Intervals { intervals }
    }

    /// Re-canonicalizes after deserialization.
    pub fn validated(self) -> Result<Self> {
        match self {
            GroundSet::Finite { labels } => GroundSet::finite(labels),
            GroundSet::Intervals { intervals } => Ok(GroundSet::Intervals {
                intervals: IntervalUnion::new(intervals.parts().to_vec()),
            }),
        }
    }

    pub fn labels(&self) -> Option<&[Symbol]> {
        match self {
            GroundSet::Finite { labels } => Some(labels),
            GroundSet::Intervals { .. } => None,
        }
    }

    pub fn whole(&self) -> GroundSubset {
        match self {
            GroundSet::Finite { labels } => GroundSubset::Finite(labels.iter().cloned().collect()),
            GroundSet::Intervals { intervals } => GroundSubset::Intervals(intervals.clone()),
        }
    }

    pub fn contains(&self, p: &GroundPoint) -> bool {
        match (self, p) {
            (GroundSet::Finite { labels }, GroundPoint::Symbol(s)) => labels.binary_search(s).is_ok(),
            (GroundSet::Intervals { intervals }, GroundPoint::Coord(c)) => intervals.contains(c),
            _ => false,
        }
    }
}

/// A single element of a ground set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroundPoint {
    Symbol(Symbol),
    Coord(Ratio),
}

impl fmt::Display for GroundPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundPoint::Symbol(s) => write!(f, "{s}"),
            GroundPoint::Coord(c) => write!(f, "{c}"),
        }
    }
}

impl From<&str> for GroundPoint {
    fn from(s: &str) -> Self {
        GroundPoint::Symbol(Symbol::from(s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroundSubset {
    Finite(BTreeSet<Symbol>),
    Intervals(IntervalUnion),
}

impl GroundSubset {
    pub fn finite<I, S>(items: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Symbol>,
    {
        GroundSubset::Finite(items.into_iter().map(Into::into).collect())
    }

    pub fn is_empty(&self) -> bool {
        match self {
            GroundSubset::Finite(s) => s.is_empty(),
            GroundSubset::Intervals(iu) => iu.is_empty(),
        }
    }

    /// Number of elements for finite subsets.
    pub fn len(&self) -> Option<usize> {
        match self {
            GroundSubset::Finite(s) => Some(s.len()),
            GroundSubset::Intervals(_) => None,
        }
    }

    pub fn contains(&self, p: &GroundPoint) -> bool {
        match (self, p) {
            (GroundSubset::Finite(s), GroundPoint::Symbol(x)) => s.contains(x),
            (GroundSubset::Intervals(iu), GroundPoint::Coord(c)) => iu.contains(c),
            _ => false,
        }
    }

    pub fn intersection(&self, other: &GroundSubset) -> Result<GroundSubset> {
        match (self, other) {
            (GroundSubset::Finite(a), GroundSubset::Finite(b)) => {
                Ok(GroundSubset::Finite(a.intersection(b).cloned().collect()))
            }
            (GroundSubset::Intervals(a), GroundSubset::Intervals(b)) => Ok(GroundSubset::Intervals(a.intersection(b))),
            _ => Err(Error::IncompatibleGround(
                "finite and interval subsets do not mix".into(),
            )),
        }
    }

    pub fn union(&self, other: &GroundSubset) -> Result<GroundSubset> {
        match (self, other) {
            (GroundSubset::Finite(a), GroundSubset::Finite(b)) => {
                Ok(GroundSubset::Finite(a.union(b).cloned().collect()))
            }
            (GroundSubset::Intervals(a), GroundSubset::Intervals(b)) => Ok(GroundSubset::Intervals(a.union(b))),
            _ => Err(Error::IncompatibleGround(
                "finite and interval subsets do not mix".into(),
            )),
        }
    }

    pub fn is_subset(&self, other: &GroundSubset) -> Result<bool> {
        match (self, other) {
            (GroundSubset::Finite(a), GroundSubset::Finite(b)) => Ok(a.is_subset(b)),
            (GroundSubset::Intervals(a), GroundSubset::Intervals(b)) => Ok(a.is_subset(b)),
            _ => Err(Error::IncompatibleGround(
                "finite and interval subsets do not mix".into(),
            )),
        }
    }
}

impl fmt::Display for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundSubset::Finite(s) => {
                let items: Vec<&str> = s.iter().map(Symbol::as_str).collect();
                write!(f, "{{{}}}", items.join(","))
            }
            GroundSubset::Intervals(iu) => {
                if iu.is_empty() {
                    return write!(f, "{{}}");
                }
                let parts: Vec<String> = iu.parts().iter().map(|iv| format!("[{}, {}]", iv.lo, iv.hi)).collect();
                write!(f, "{}", parts.join(" u "))
            }
        }
    }
}
