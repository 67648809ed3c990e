use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// Closed interval `[lo, hi]`; `lo == hi` is a single point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lo: Ratio,
    pub hi: Ratio,
}

impl Interval {
    pub fn new(lo: Ratio, hi: Ratio) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidGround(format!("interval [{lo}, {hi}] has lo > hi")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(p: Ratio) -> Self {
        Interval { lo: p.clone(), hi: p }
    }

    pub fn length(&self) -> Ratio {
        &self.hi - &self.lo
    }

    pub fn contains(&self, p: &Ratio) -> bool {
        &self.lo <= p && p <= &self.hi
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.lo, &self.hi].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [lo, hi] = <[Ratio; 2]>::deserialize(d)?;
        Interval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}

/// Finite union of closed intervals, kept sorted with overlapping or touching
/// pieces merged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct IntervalUnion(Vec<Interval>);

impl<'de> Deserialize<'de> for IntervalUnion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(IntervalUnion::new(Vec::<Interval>::deserialize(d)?))
    }
}

impl IntervalUnion {
    pub fn new(mut parts: Vec<Interval>) -> Self {
        parts.sort();
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for iv in parts {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => out.push(iv),
            }
        }
        IntervalUnion(out)
    }

    pub fn empty() -> Self {
        IntervalUnion(Vec::new())
    }

    pub fn single(lo: Ratio, hi: Ratio) -> Result<Self> {
        Ok(IntervalUnion(vec![Interval::new(lo, hi)?]))
    }

    pub fn parts(&self) -> &[Interval] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Lebesgue measure.
    pub fn length(&self) -> Ratio {
        self.0.iter().map(Interval::length).sum()
    }

    pub fn contains(&self, p: &Ratio) -> bool {
        self.0.iter().any(|iv| iv.contains(p))
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        IntervalUnion::new(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    pub fn intersection(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (&self.0[i], &other.0[j]);
            let lo = if a.lo > b.lo { &a.lo } else { &b.lo };
            let hi = if a.hi < b.hi { &a.hi } else { &b.hi };
            if lo <= hi {
                out.push(Interval {
                    lo: lo.clone(),
                    hi: hi.clone(),
                });
            }
            if a.hi < b.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalUnion::new(out)
    }

    pub fn is_subset(&self, other: &IntervalUnion) -> bool {
        self.0
            .iter()
            .all(|iv| other.0.iter().any(|o| o.lo <= iv.lo && iv.hi <= o.hi))
    }

    /// All interval endpoints, sorted and deduplicated.
    pub fn endpoints(&self) -> Vec<Ratio> {
        let mut pts: Vec<Ratio> = self.0.iter().flat_map(|iv| [iv.lo.clone(), iv.hi.clone()]).collect();
        pts.sort();
        pts.dedup();
        pts
    }
}
