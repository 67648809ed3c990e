use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ground::GroundSubset;
use super::interval::Interval;
use super::symbol::Symbol;
use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::ratio::Ratio;

/// A set functional that is zero exactly on the empty set and never shrinks
/// under union with another set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UncertaintyFunction {
    /// `(|S| / base)^exponent`
    CardinalityPower { base: u64, exponent: u32 },
    /// Lebesgue length plus a constant, for nonempty interval unions.
    LebesguePlusOffset { offset: Ratio },
    /// `(Hamming diameter + 1) / normalizer` over equal-length bit-string labels.
    DiameterPlusOne { normalizer: Ratio },
    /// Sum of per-symbol weights over a normalizer.
    ExplicitWeights {
        weights: BTreeMap<Symbol, Ratio>,
        normalizer: Ratio,
    },
}

impl UncertaintyFunction {
    pub fn cardinality(base: u64, exponent: u32) -> Self {
        UncertaintyFunction::CardinalityPower { base, exponent }
    }

    pub fn lebesgue(offset: Ratio) -> Self {
        UncertaintyFunction::LebesguePlusOffset { offset }
    }

    /// Rejects parameters that would break positivity.
    pub fn validated(self) -> Result<Self> {
        let bad = |msg: String| Err(Error::IncompatibleGround(msg));
        match &self {
            UncertaintyFunction::CardinalityPower { base, exponent } if *base == 0 || *exponent == 0 => {
                bad("cardinality base and exponent must be positive".into())
            }
            UncertaintyFunction::LebesguePlusOffset { offset } if offset.is_negative() => {
                bad("offset must be nonnegative".into())
            }
            UncertaintyFunction::DiameterPlusOne { normalizer } if *normalizer <= Ratio::zero() => {
                bad("normalizer must be positive".into())
            }
            UncertaintyFunction::ExplicitWeights { weights, normalizer } => {
                if *normalizer <= Ratio::zero() {
                    return bad("normalizer must be positive".into());
                }
                if let Some((s, _)) = weights.iter().find(|(_, w)| **w <= Ratio::zero()) {
                    return bad(format!("weight of {s} must be positive"));
                }
                Ok(self)
            }
            _ => Ok(self),
        }
    }

    /// m(S). Zero iff S is empty.
    pub fn measure(&self, set: &GroundSubset) -> Result<Ratio> {
        if set.is_empty() {
            return Ok(Ratio::zero());
        }
        match (self, set) {
            (UncertaintyFunction::CardinalityPower { base, exponent }, GroundSubset::Finite(s)) => {
                Ok(card_power(s.len(), *base, *exponent))
            }
            (UncertaintyFunction::LebesguePlusOffset { offset }, GroundSubset::Intervals(iu)) => {
                Ok(iu.length() + offset)
            }
            (UncertaintyFunction::DiameterPlusOne { normalizer }, GroundSubset::Finite(s)) => {
                let codes = s.iter().map(bit_code).collect::<Result<Vec<_>>>()?;
                Ok(Ratio::from_u64(hamming_diameter(&codes) as u64 + 1) / normalizer)
            }
            (UncertaintyFunction::ExplicitWeights { weights, normalizer }, GroundSubset::Finite(s)) => {
                let mut total = Ratio::zero();
                for sym in s {
                    let w = weights
                        .get(sym)
                        .ok_or_else(|| Error::IncompatibleGround(format!("no weight for symbol {sym}")))?;
                    total = total + w;
                }
                Ok(total / normalizer)
            }
            _ => Err(Error::IncompatibleGround(format!("{self} cannot measure {set}"))),
        }
    }

    /// Binds the functional to concrete points so index sets can be measured
    /// without symbol lookups.
    pub(crate) fn bind(&self, points: &[PointLabel]) -> Result<PointMeasure> {
        let all_symbols = || -> Option<Vec<&Symbol>> {
            points
                .iter()
                .map(|p| match p {
                    PointLabel::Symbol(s) => Some(s),
                    PointLabel::Piece { .. } => None,
                })
                .collect()
        };
        let mismatch = || Error::IncompatibleGround(format!("{self} does not fit this side's ground kind"));
        match self {
            UncertaintyFunction::CardinalityPower { base, exponent } => {
                all_symbols().ok_or_else(mismatch)?;
                Ok(PointMeasure::Card {
                    base: *base,
                    exponent: *exponent,
                })
            }
            UncertaintyFunction::LebesguePlusOffset { offset } => {
                let lengths = points
                    .iter()
                    .map(|p| match p {
                        PointLabel::Piece { span, .. } => Some(span.length()),
                        PointLabel::Symbol(_) => None,
                    })
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(mismatch)?;
                Ok(PointMeasure::Lengths {
                    lengths,
                    offset: offset.clone(),
                })
            }
            UncertaintyFunction::DiameterPlusOne { normalizer } => {
                let syms = all_symbols().ok_or_else(mismatch)?;
                let codes = syms.into_iter().map(bit_code).collect::<Result<Vec<_>>>()?;
                Ok(PointMeasure::Diameter {
                    codes,
                    normalizer: normalizer.clone(),
                })
            }
            UncertaintyFunction::ExplicitWeights { weights, normalizer } => {
                let syms = all_symbols().ok_or_else(mismatch)?;
                let w = syms
                    .into_iter()
                    .map(|s| {
                        weights
                            .get(s)
                            .cloned()
                            .ok_or_else(|| Error::IncompatibleGround(format!("no weight for symbol {s}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(PointMeasure::Weights {
                    weights: w,
                    normalizer: normalizer.clone(),
                })
            }
        }
    }
}

pub(crate) fn card_power(size: usize, base: u64, exponent: u32) -> Ratio {
    if size == 0 {
        return Ratio::zero();
    }
    Ratio::new(size as i64, base as i64).pow(exponent)
}

impl fmt::Display for UncertaintyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UncertaintyFunction::CardinalityPower { base, exponent } => write!(f, "card:{base}:{exponent}"),
            UncertaintyFunction::LebesguePlusOffset { offset } => write!(f, "leb+{offset}"),
            UncertaintyFunction::DiameterPlusOne { normalizer } => write!(f, "diam:{normalizer}"),
            UncertaintyFunction::ExplicitWeights { weights, normalizer } => {
                write!(f, "weights({} symbols)/{normalizer}", weights.len())
            }
        }
    }
}

/// Compact names: `card:<base>:<exp>`, `leb+<offset>`, `diam:<normalizer>`.
impl FromStr for UncertaintyFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::IncompatibleGround(format!("unrecognized uncertainty function {s:?}"));
        let t = s.trim();
        let m = if let Some(rest) = t.strip_prefix("card:") {
            let (b, e) = rest.split_once(':').ok_or_else(bad)?;
            UncertaintyFunction::CardinalityPower {
                base: b.parse().map_err(|_| bad())?,
                exponent: e.parse().map_err(|_| bad())?,
            }
        } else if let Some(rest) = t.strip_prefix("leb+") {
            UncertaintyFunction::LebesguePlusOffset { offset: rest.parse()? }
        } else if let Some(rest) = t.strip_prefix("diam:") {
            UncertaintyFunction::DiameterPlusOne {
                normalizer: rest.parse()?,
            }
        } else {
            return Err(bad());
        };
        m.validated()
    }
}

/// How a reduced point maps back to its ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointLabel {
    Symbol(Symbol),
    /// A piece of an interval arrangement: a single point (`span.lo == span.hi`)
    /// or an open interval whose closure is `span`.
    Piece {
        span: Interval,
        open: bool,
    },
}

impl PointLabel {
    /// True when the point stands for more than one ground element.
    pub fn is_multi(&self) -> bool {
        matches!(self, PointLabel::Piece { span, .. } if span.lo < span.hi)
    }
}

/// An uncertainty function bound to indexed points.
#[derive(Clone, Debug)]
pub(crate) enum PointMeasure {
    Card { base: u64, exponent: u32 },
    Lengths { lengths: Vec<Ratio>, offset: Ratio },
    Diameter { codes: Vec<Vec<bool>>, normalizer: Ratio },
    Weights { weights: Vec<Ratio>, normalizer: Ratio },
}

impl PointMeasure {
    pub fn of(&self, set: &IndexSet) -> Ratio {
        if set.is_empty() {
            return Ratio::zero();
        }
        match self {
            PointMeasure::Card { base, exponent } => card_power(set.len(), *base, *exponent),
            PointMeasure::Lengths { lengths, offset } => {
                set.iter().map(|i| lengths[i as usize].clone()).sum::<Ratio>() + offset
            }
            PointMeasure::Diameter { codes, normalizer } => {
                let chosen: Vec<Vec<bool>> = set.iter().map(|i| codes[i as usize].clone()).collect();
                Ratio::from_u64(hamming_diameter(&chosen) as u64 + 1) / normalizer
            }
            PointMeasure::Weights { weights, normalizer } => {
                set.iter().map(|i| weights[i as usize].clone()).sum::<Ratio>() / normalizer
            }
        }
    }
}

fn bit_code(s: &Symbol) -> Result<Vec<bool>> {
    s.as_str()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::IncompatibleGround(format!("label {s} is not a bit string"))),
        })
        .collect()
}

fn hamming_diameter(codes: &[Vec<bool>]) -> usize {
    let mut best = 0;
    for (i, a) in codes.iter().enumerate() {
        for b in &codes[i + 1..] {
            let d = a.iter().zip(b).filter(|(x, y)| x != y).count() + a.len().abs_diff(b.len());
            best = best.max(d);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::r;
    use crate::uvcore::interval::IntervalUnion;

    #[test]
    fn lebesgue_plus_offset_on_walker_interval() {
        let m = UncertaintyFunction::lebesgue(r(10, 1));
        let s = GroundSubset::Intervals(IntervalUnion::single(r(0, 1), r(15, 1)).unwrap());
        assert_eq!(m.measure(&s).unwrap(), r(25, 1));
    }

    #[test]
    fn cardinality_on_block_channel_alphabet() {
        let m = UncertaintyFunction::cardinality(19, 1);
        assert_eq!(m.measure(&GroundSubset::finite(["2", "11"])).unwrap(), r(2, 19));
        let m3 = UncertaintyFunction::cardinality(19, 3);
        assert_eq!(m3.measure(&GroundSubset::finite(["2", "11"])).unwrap(), r(8, 6859));
    }

    #[test]
    fn empty_set_is_zero_for_every_kind() {
        let fns = [
            UncertaintyFunction::cardinality(4, 2),
            UncertaintyFunction::DiameterPlusOne { normalizer: r(5, 1) },
            UncertaintyFunction::ExplicitWeights {
                weights: BTreeMap::new(),
                normalizer: r(1, 1),
            },
        ];
        for m in fns {
            assert_eq!(
                m.measure(&GroundSubset::finite(Vec::<&str>::new())).unwrap(),
                Ratio::zero()
            );
        }
        let leb = UncertaintyFunction::lebesgue(r(10, 1));
        assert_eq!(
            leb.measure(&GroundSubset::Intervals(IntervalUnion::empty())).unwrap(),
            Ratio::zero()
        );
    }

    #[test]
    fn diameter_plus_one() {
        let m = UncertaintyFunction::DiameterPlusOne { normalizer: r(5, 1) };
        assert_eq!(m.measure(&GroundSubset::finite(["1000", "0100"])).unwrap(), r(3, 5));
        assert_eq!(m.measure(&GroundSubset::finite(["1000"])).unwrap(), r(1, 5));
        assert!(m.measure(&GroundSubset::finite(["10a0"])).is_err());
    }

    #[test]
    fn kind_mismatch_is_reported() {
        let leb = UncertaintyFunction::lebesgue(r(10, 1));
        assert!(matches!(
            leb.measure(&GroundSubset::finite(["a"])),
            Err(Error::IncompatibleGround(_))
        ));
    }

    #[test]
    fn compact_names_round_trip() {
        for text in ["card:19:1", "card:19:3", "leb+10", "diam:5", "leb+1/2"] {
            let m: UncertaintyFunction = text.parse().unwrap();
            assert_eq!(m.to_string(), text);
        }
        assert!("card:0:1".parse::<UncertaintyFunction>().is_err());
        assert!("leb+0.5".parse::<UncertaintyFunction>().is_err());
        assert!("gauss:1".parse::<UncertaintyFunction>().is_err());
    }
}
