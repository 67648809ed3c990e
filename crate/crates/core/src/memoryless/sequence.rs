use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// Confidence levels δ_n, one per horizon.
///
/// `first`, when present, overrides the rule at n = 1 so that a sequence can
/// start at a chosen one-step level and continue geometrically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfidenceSequence {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first: Option<Ratio>,
    #[serde(flatten)]
    pub rule: SequenceRule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceRule {
    /// δ_n = scale · base^n
    Geometric {
        base: Ratio,
        #[serde(default = "Ratio::one")]
        scale: Ratio,
    },
    Constant {
        delta: Ratio,
    },
    Zero,
    /// δ_1, δ_2, ... up to the listed length.
    Explicit {
        values: Vec<Ratio>,
    },
}

/// Whether a condition over every n > 1 holds, and why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TailCheck {
    pub holds: bool,
    pub detail: String,
}

fn tail(holds: bool, detail: impl Into<String>) -> TailCheck {
    TailCheck {
        holds,
        detail: detail.into(),
    }
}

const NOT_CERTIFIABLE: &str = "an explicit list fixes finitely many terms; the tail is unknown";

impl ConfidenceSequence {
    pub fn new(rule: SequenceRule) -> Result<Self> {
        ConfidenceSequence { first: None, rule }.validated()
    }

    pub fn starting_at(first: Ratio, rule: SequenceRule) -> Result<Self> {
        ConfidenceSequence {
            first: Some(first),
            rule,
        }
        .validated()
    }

    pub fn geometric(base: Ratio) -> Result<Self> {
        Self::new(SequenceRule::Geometric {
            base,
            scale: Ratio::one(),
        })
    }

    pub fn zero() -> Self {
        ConfidenceSequence {
            first: None,
            rule: SequenceRule::Zero,
        }
    }

    /// Rejects negative levels.
    pub fn validated(self) -> Result<Self> {
        let bad = |what: &str| Err(Error::InvalidSequence(format!("{what} must be nonnegative")));
        if self.first.as_ref().is_some_and(Ratio::is_negative) {
            return bad("first");
        }
        match &self.rule {
            SequenceRule::Geometric { base, scale } if base.is_negative() || scale.is_negative() => {
                bad("geometric terms")
            }
            SequenceRule::Constant { delta } if delta.is_negative() => bad("constant level"),
            SequenceRule::Explicit { values } if values.is_empty() => {
                Err(Error::InvalidSequence("explicit list is empty".into()))
            }
            SequenceRule::Explicit { values } if values.iter().any(Ratio::is_negative) => bad("explicit levels"),
            _ => Ok(self),
        }
    }

    /// δ_n, or None past the end of an explicit list.
    pub fn at(&self, n: u32) -> Option<Ratio> {
        assert!(n >= 1, "horizons start at 1");
        if n == 1 {
            if let Some(f) = &self.first {
                return Some(f.clone());
            }
        }
        match &self.rule {
            SequenceRule::Geometric { base, scale } => Some(scale * &base.pow(n)),
            SequenceRule::Constant { delta } => Some(delta.clone()),
            SequenceRule::Zero => Some(Ratio::zero()),
            SequenceRule::Explicit { values } => values.get(n as usize - 1).cloned(),
        }
    }

    /// δ_n <= c^n for every n > 1.
    pub fn below_powers(&self, c: &Ratio) -> TailCheck {
        match &self.rule {
            SequenceRule::Zero => tail(true, "every term is 0"),
            SequenceRule::Geometric { base, scale } => {
                if scale.is_zero() || base.is_zero() {
                    tail(true, "every term past the first is 0")
                } else if base > c {
                    tail(
                        false,
                        format!("ratio {base} exceeds {c}, so the terms eventually pass c^n"),
                    )
                } else {
                    // (base/c)^n is nonincreasing, so n = 2 is the binding term.
                    let lhs = scale * &base.pow(2);
                    let rhs = c.pow(2);
                    tail(lhs <= rhs, format!("n = 2 binds: {lhs} <= {rhs}"))
                }
            }
            SequenceRule::Constant { delta } => {
                if delta.is_zero() {
                    tail(true, "every term is 0")
                } else if *c >= Ratio::one() {
                    let rhs = c.pow(2);
                    tail(*delta <= rhs, format!("n = 2 binds: {delta} <= {rhs}"))
                } else {
                    tail(false, format!("c^n tends to 0 but the terms stay at {delta}"))
                }
            }
            SequenceRule::Explicit { .. } => tail(false, NOT_CERTIFIABLE),
        }
    }

    /// δ_n >= lead · q^(n-1) for every n > 1.
    pub fn above_geometric(&self, lead: &Ratio, q: &Ratio) -> TailCheck {
        if lead.is_zero() || q.is_zero() {
            return tail(true, "the lower envelope is 0 past the first term");
        }
        match &self.rule {
            SequenceRule::Zero => tail(false, "every term is 0 but the envelope is positive"),
            SequenceRule::Geometric { base, scale } => {
                if base < q {
                    tail(
                        false,
                        format!("ratio {base} is below {q}, so the terms eventually drop under the envelope"),
                    )
                } else {
                    let lhs = scale * &base.pow(2);
                    let rhs = lead * q;
                    tail(lhs >= rhs, format!("n = 2 binds: {lhs} >= {rhs}"))
                }
            }
            SequenceRule::Constant { delta } => {
                if *q > Ratio::one() {
                    tail(false, format!("the envelope grows without bound past {delta}"))
                } else {
                    let rhs = lead * q;
                    tail(*delta >= rhs, format!("n = 2 binds: {delta} >= {rhs}"))
                }
            }
            SequenceRule::Explicit { .. } => tail(false, NOT_CERTIFIABLE),
        }
    }

    /// δ_n < 1 for every n > 1.
    pub fn below_one(&self) -> TailCheck {
        match &self.rule {
            SequenceRule::Zero => tail(true, "every term is 0"),
            SequenceRule::Geometric { base, scale } => {
                if *base <= Ratio::one() {
                    let lhs = scale * &base.pow(2);
                    tail(lhs < Ratio::one(), format!("n = 2 binds: {lhs} < 1"))
                } else {
                    tail(scale.is_zero(), format!("ratio {base} exceeds 1"))
                }
            }
            SequenceRule::Constant { delta } => tail(*delta < Ratio::one(), format!("{delta} < 1")),
            SequenceRule::Explicit { .. } => tail(false, NOT_CERTIFIABLE),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::r;
    use proptest::prelude::*;

    #[test]
    fn json_forms() {
        let s: ConfidenceSequence = serde_json::from_str(r#"{"kind":"geometric","base":"7/342"}"#).unwrap();
        assert_eq!(s.at(2), Some(r(49, 116964)));
        let s: ConfidenceSequence = serde_json::from_str(r#"{"kind":"zero","first":"2/9"}"#).unwrap();
        assert_eq!(s.at(1), Some(r(2, 9)));
        assert_eq!(s.at(3), Some(Ratio::zero()));
        let s: ConfidenceSequence = serde_json::from_str(r#"{"kind":"explicit","values":["1/2","1/4"]}"#).unwrap();
        assert_eq!(s.at(3), None);
        assert!(serde_json::from_str::<ConfidenceSequence>(r#"{"kind":"constant","delta":"0.5"}"#).is_err());
    }

    #[test]
    fn negative_terms_rejected() {
        assert!(ConfidenceSequence::geometric(r(-1, 2)).is_err());
        assert!(ConfidenceSequence::new(SequenceRule::Explicit { values: vec![] }).is_err());
    }

    fn small() -> impl Strategy<Value = Ratio> {
        (0i64..6, 1i64..6).prop_map(|(p, q)| r(p, q))
    }

    fn rule() -> impl Strategy<Value = SequenceRule> {
        prop_oneof![
            (small(), small()).prop_map(|(base, scale)| SequenceRule::Geometric { base, scale }),
            small().prop_map(|delta| SequenceRule::Constant { delta }),
            Just(SequenceRule::Zero),
        ]
    }

    proptest! {
        // The closed-form tail checks never contradict the first 40 terms.
        #[test]
        fn tail_checks_agree_with_prefixes(rule in rule(), c in small(), lead in small(), q in small()) {
            let s = ConfidenceSequence::new(rule).unwrap();
            let terms: Vec<Ratio> = (2..40).map(|n| s.at(n).unwrap()).collect();
            if s.below_powers(&c).holds {
                prop_assert!(terms.iter().zip(2..).all(|(d, n)| *d <= c.pow(n)));
            }
            if s.above_geometric(&lead, &q).holds {
                prop_assert!(terms.iter().zip(2..).all(|(d, n)| *d >= &lead * &q.pow(n - 1)));
            }
            if s.below_one().holds {
                prop_assert!(terms.iter().all(|d| *d < Ratio::one()));
            }
        }
    }
}
