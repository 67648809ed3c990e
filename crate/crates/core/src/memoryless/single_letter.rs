//! Sufficient conditions under which a one-step codebook settles an
//! infinite-horizon capacity. Each condition is evaluated exactly and
//! reported with the values that decided it.

use serde::{Deserialize, Serialize};

use super::product::image_union;
use super::sequence::ConfidenceSequence;
use crate::bits::Bits;
use crate::chancap::{BoundChannel, Codebook};
use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::infocalc::{Analysis, OverlapFamily};
use crate::ratio::Ratio;
use crate::uvcore::{Side, UncertaintyFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// Upper capacity for a sequence decaying at least as fast as a power.
    T12,
    /// Zero-error capacity.
    Cor2,
    /// Lower capacity for a sequence decaying no faster than a geometric envelope.
    T13,
    /// Lower capacity for vanishing sequences.
    T14,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [Theorem::T12, Theorem::Cor2, Theorem::T13, Theorem::T14];

    pub fn quantity(self) -> Quantity {
        match self {
            Theorem::T12 => Quantity::UpperCapacity,
            Theorem::Cor2 => Quantity::ZeroErrorCapacity,
            Theorem::T13 => Quantity::LowerCapacity,
            Theorem::T14 => Quantity::VanishingLowerCapacity,
        }
    }
}

impl std::str::FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t12" => Ok(Theorem::T12),
            "cor2" => Ok(Theorem::Cor2),
            "t13" => Ok(Theorem::T13),
            "t14" => Ok(Theorem::T14),
            _ => Err(Error::InvalidParameter(format!(
                "unknown variant {s:?}; expected t12, cor2, t13 or t14"
            ))),
        }
    }
}

/// The infinite-horizon capacities a certificate can settle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// Largest achievable rate along the given sequence, upper limit.
    UpperCapacity,
    /// Largest achievable rate along the given sequence, lower limit.
    LowerCapacity,
    /// Upper limit with every level at zero.
    ZeroErrorCapacity,
    /// Lower limit, best over sequences that vanish.
    VanishingLowerCapacity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

fn cond(name: &'static str, holds: bool, detail: impl Into<String>) -> Condition {
    Condition {
        name,
        holds,
        detail: detail.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingleLetterParams {
    pub codebook: Codebook,
    /// The scaled level; the budget for the vanishing variant. Unused at zero error.
    #[serde(default)]
    pub delta_bar: Option<Ratio>,
    /// One-step level; falls back to the sequence's first term.
    #[serde(default)]
    pub delta1: Option<Ratio>,
    #[serde(default)]
    pub sequence: Option<ConfidenceSequence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingleLetterCertificate {
    pub theorem: Theorem,
    pub quantity: Quantity,
    pub codebook: Codebook,
    pub delta_bar: Ratio,
    /// delta_bar / |codebook|, the level of the family.
    pub level: Ratio,
    pub family: Option<OverlapFamily>,
    /// Largest normalized family set, for the variants that use it.
    pub delta_hat: Option<Ratio>,
    pub conditions: Vec<Condition>,
    /// Present exactly when every condition holds.
    pub capacity_bits: Option<Bits>,
}

impl SingleLetterCertificate {
    pub fn holds(&self) -> bool {
        self.capacity_bits.is_some()
    }
}

/// The one-step pair induced by a codebook, with its family at one level.
struct OneStep {
    analysis: Analysis,
    /// Output indices of the analysis's y points, in order.
    outputs: Vec<u32>,
    /// m(codebook's output range) / m(output alphabet).
    covered: Ratio,
    size: Ratio,
}

impl OneStep {
    fn new(bound: &BoundChannel, codebook: &Codebook) -> Result<Self> {
        let xs = codebook
            .points()
            .iter()
            .map(|s| bound.channel().index_of(s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_inputs(bound, &xs)
    }

    fn from_inputs(bound: &BoundChannel, xs: &[usize]) -> Result<Self> {
        let analysis = bound.induced_analysis(xs)?;
        let covered = analysis.total(Side::Y) / bound.total();
        Ok(OneStep {
            outputs: image_union(bound.channel(), xs).iter().collect(),
            covered,
            size: Ratio::from_u64(xs.len() as u64),
            analysis,
        })
    }

    fn level(&self, delta_bar: &Ratio) -> Ratio {
        delta_bar / &self.size
    }

    fn family(&self, delta_bar: &Ratio) -> Option<OverlapFamily> {
        self.analysis.overlap_family(Side::Y, &self.level(delta_bar))
    }

    fn global(&self, set: &IndexSet) -> IndexSet {
        set.iter().map(|k| self.outputs[k as usize]).collect()
    }

    /// Every input outside the codebook has its image inside one family set.
    fn containment(&self, bound: &BoundChannel, codebook: &Codebook, family: &OverlapFamily) -> Condition {
        let sets: Vec<IndexSet> = family.members().iter().map(|s| self.global(s)).collect();
        let ch = bound.channel();
        let outside = ch
            .inputs()
            .iter()
            .zip(ch.images())
            .filter(|(s, _)| !codebook.points().contains(s))
            .find(|(_, img)| !sets.iter().any(|s| img.is_subset(s)));
        match outside {
            None => cond(
                "uncovered inputs inside family sets",
                true,
                "every image outside the codebook fits in one set",
            ),
            Some((s, _)) => cond(
                "uncovered inputs inside family sets",
                false,
                format!("image of {s} fits in no set"),
            ),
        }
    }

    fn delta_hat(&self, family: &OverlapFamily) -> Ratio {
        Ratio::max_of(
            &family
                .members()
                .iter()
                .map(|s| self.analysis.normalized(Side::Y, s))
                .collect::<Vec<_>>(),
        )
        .unwrap_or_else(Ratio::zero)
    }
}

fn product_rule(m: &UncertaintyFunction) -> Condition {
    let holds = matches!(m, UncertaintyFunction::CardinalityPower { .. });
    cond(
        "product rule",
        holds,
        if holds {
            "cardinality powers factor over products".to_string()
        } else {
            format!("{m} does not factor")
        },
    )
}

fn union_bound(m: &UncertaintyFunction, outputs: usize) -> Condition {
    match m {
        UncertaintyFunction::CardinalityPower { exponent: 1, .. } => {
            cond("union bound", true, "cardinality is subadditive")
        }
        UncertaintyFunction::CardinalityPower { base, exponent } if outputs >= 2 => cond(
            "union bound",
            false,
            format!("two disjoint points: (2/{base})^{exponent} > 2 (1/{base})^{exponent}"),
        ),
        UncertaintyFunction::CardinalityPower { .. } => cond("union bound", true, "a single output point"),
        other => cond("union bound", false, format!("not established for {other}")),
    }
}

fn feasibility(
    step: &OneStep,
    delta_bar: &Ratio,
    family: &Option<OverlapFamily>,
    delta1_cap: Option<(&Ratio, bool)>,
) -> Condition {
    let level = step.level(delta_bar);
    let Some(f) = family else {
        return cond(
            "codebook in feasible set",
            false,
            format!("no overlap family at level {level}"),
        );
    };
    let scaled = delta_bar * &step.covered;
    match delta1_cap {
        Some((d1, strict)) => {
            let ok = if strict { scaled < *d1 } else { scaled <= *d1 };
            let op = if strict { "<" } else { "<=" };
            cond(
                "codebook in feasible set",
                ok,
                format!(
                    "{:?} family of {} sets at level {level}; {delta_bar} x {} = {scaled} {op} {d1}",
                    f.regime,
                    f.len(),
                    step.covered
                ),
            )
        }
        None => cond(
            "codebook in feasible set",
            true,
            format!("{:?} family of {} sets at level {level}", f.regime, f.len()),
        ),
    }
}

impl BoundChannel {
    /// Best one-step capacity over every level below m(V), with the least
    /// level attaining it. Capacity only changes where delta crosses k times
    /// an equivocation value, so those breakpoints are exhaustive.
    pub fn peak_capacity(&self) -> Result<(usize, Ratio)> {
        let n = self.channel().inputs().len();
        let mut levels = vec![Ratio::zero()];
        for v in self.table().distinct_values() {
            for k in 1..=n {
                let d = &v * &Ratio::from_u64(k as u64);
                if d < *self.v_min() {
                    levels.push(d);
                }
            }
        }
        levels.sort();
        levels.dedup();
        let mut best = (0, Ratio::zero());
        for d in levels {
            let c = self.capacity(&d)?.count;
            if c > best.0 {
                best = (c, d);
            }
        }
        Ok(best)
    }

    pub fn single_letter_check(
        &self,
        theorem: Theorem,
        params: &SingleLetterParams,
    ) -> Result<SingleLetterCertificate> {
        let codebook = &params.codebook;
        let step = OneStep::new(self, codebook)?;
        let m = self.uncertainty();
        let need_bar = || {
            params
                .delta_bar
                .clone()
                .ok_or_else(|| Error::MissingParameter("delta_bar".into()))
        };
        let need_seq = || {
            params
                .sequence
                .as_ref()
                .ok_or_else(|| Error::MissingParameter("sequence".into()))
        };
        let delta1 = || -> Result<Ratio> {
            let from_seq = params.sequence.as_ref().and_then(|s| s.first.clone());
            match (&params.delta1, from_seq) {
                (Some(a), Some(b)) if *a != b => Err(Error::InvalidSequence(format!(
                    "delta1 {a} disagrees with the sequence's first term {b}"
                ))),
                (Some(a), _) => Ok(a.clone()),
                (None, Some(b)) => Ok(b),
                (None, None) => Err(Error::MissingParameter("delta1".into())),
            }
        };

        let (delta_bar, target, d1) = match theorem {
            Theorem::T12 | Theorem::T13 => {
                let d1 = delta1()?;
                need_seq()?;
                (need_bar()?, self.capacity(&d1)?.count, Some(d1))
            }
            Theorem::Cor2 => (Ratio::zero(), self.capacity(&Ratio::zero())?.count, Some(Ratio::zero())),
            Theorem::T14 => (need_bar()?, self.peak_capacity()?.0, None),
        };
        let family = step.family(&delta_bar);
        if let Some(f) = &family {
            if f.len() != target {
                return Err(Error::NotCapacityAchieving(format!(
                    "{codebook} carries {} sets at level {} but the one-step optimum is {target}",
                    f.len(),
                    step.level(&delta_bar)
                )));
            }
        }

        let mut conditions = Vec::new();
        let mut delta_hat = None;
        match theorem {
            Theorem::T12 => {
                let d1 = d1.expect("set above");
                let seq = need_seq()?;
                conditions.push(feasibility(&step, &delta_bar, &family, Some((&d1, false))));
                if let Some(f) = &family {
                    conditions.push(step.containment(self, codebook, f));
                }
                let lhs = &delta_bar * &(Ratio::one() + Ratio::one() / &step.size);
                let rhs = &d1 / &step.covered;
                conditions.push(cond("level margin", lhs <= rhs, format!("{lhs} <= {rhs}")));
                let c = &delta_bar * self.v_min() / &step.size;
                let t = seq.below_powers(&c);
                conditions.push(cond(
                    "sequence under power envelope",
                    t.holds,
                    format!("c = {c}; {}", t.detail),
                ));
                conditions.push(product_rule(m));
                conditions.push(union_bound(m, self.channel().outputs().len()));
            }
            Theorem::Cor2 => {
                conditions.push(feasibility(&step, &delta_bar, &family, None));
                if let Some(f) = &family {
                    conditions.push(step.containment(self, codebook, f));
                }
                conditions.push(product_rule(m));
                conditions.push(union_bound(m, self.channel().outputs().len()));
            }
            Theorem::T13 => {
                let d1 = d1.expect("set above");
                let seq = need_seq()?;
                conditions.push(feasibility(&step, &delta_bar, &family, Some((&d1, false))));
                if let Some(f) = &family {
                    let hat = step.delta_hat(f);
                    let q = &hat * &step.size;
                    let t = seq.above_geometric(&delta_bar, &q);
                    conditions.push(cond(
                        "sequence over geometric envelope",
                        t.holds,
                        format!("largest set {hat}, ratio {q}; {}", t.detail),
                    ));
                    delta_hat = Some(hat);
                }
                let t = seq.below_one();
                conditions.push(cond("sequence below one", t.holds, t.detail));
                conditions.push(product_rule(m));
            }
            Theorem::T14 => {
                conditions.push(feasibility(&step, &delta_bar, &family, Some((self.v_min(), true))));
                if let Some(f) = &family {
                    let hat = step.delta_hat(f);
                    let q = &hat * &step.size;
                    conditions.push(cond(
                        "largest set times size below one",
                        q < Ratio::one(),
                        format!("{hat} x {} = {q} < 1", step.size),
                    ));
                    delta_hat = Some(hat);
                }
                conditions.push(product_rule(m));
            }
        }

        let holds = family.is_some() && conditions.iter().all(|c| c.holds);
        let capacity_bits = holds.then(|| Bits::from_count(family.as_ref().map_or(1, |f| f.len() as u64)));
        Ok(SingleLetterCertificate {
            theorem,
            quantity: theorem.quantity(),
            codebook: codebook.clone(),
            level: step.level(&delta_bar),
            delta_bar,
            family,
            delta_hat,
            conditions,
            capacity_bits,
        })
    }

    /// Scaled levels worth trying for a codebook: zero, every value where its
    /// family can change, the admissible endpoint, and midpoints between them.
    fn delta_bar_candidates(step: &OneStep, top: &Ratio, inclusive: bool) -> Vec<Ratio> {
        let mut v: Vec<Ratio> = step
            .analysis
            .association_set(Side::Y)
            .into_iter()
            .map(|a| a * &step.size)
            .filter(|d| d < top)
            .collect();
        v.push(Ratio::zero());
        let mut with_mids = v.clone();
        v.push(top.clone());
        v.sort();
        v.dedup();
        with_mids.extend(v.windows(2).map(|w| (&w[0] + &w[1]) / Ratio::from_int(2)));
        if inclusive {
            with_mids.push(top.clone());
        }
        with_mids.retain(|d| !d.is_negative() && (d < top || (inclusive && d == top)));
        with_mids.sort();
        with_mids.dedup();
        with_mids
    }

    /// Searches codebooks over image-class representatives and a finite set of
    /// scaled levels for a passing certificate. Returns the first in
    /// codebook-mask order, then increasing level.
    pub fn find_certificate(
        &self,
        theorem: Theorem,
        sequence: Option<&ConfidenceSequence>,
    ) -> Result<Option<SingleLetterCertificate>> {
        let reps = self.channel().image_class_reps();
        if reps.len() > crate::chancap::ORACLE_LIMIT {
            return Err(Error::AlphabetTooLarge {
                size: reps.len(),
                limit: crate::chancap::ORACLE_LIMIT,
            });
        }
        let delta1 = match theorem {
            Theorem::T12 | Theorem::T13 => match sequence.and_then(|s| s.at(1)) {
                Some(d) => Some(d),
                None => return Ok(None),
            },
            _ => None,
        };
        let inputs = self.channel().inputs();
        for mask in 1u64..1 << reps.len() {
            let xs: Vec<usize> = reps
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &x)| x)
                .collect();
            let step = OneStep::from_inputs(self, &xs)?;
            let candidates = match theorem {
                Theorem::Cor2 => vec![Ratio::zero()],
                Theorem::T12 => {
                    let d1 = delta1.as_ref().expect("checked above");
                    let top = d1 / &step.covered / (Ratio::one() + Ratio::one() / &step.size);
                    Self::delta_bar_candidates(&step, &top, true)
                }
                Theorem::T13 => {
                    let top = delta1.as_ref().expect("checked above") / &step.covered;
                    Self::delta_bar_candidates(&step, &top, true)
                }
                Theorem::T14 => Self::delta_bar_candidates(&step, &(self.v_min() / &step.covered), false),
            };
            let codebook = Codebook::new(xs.iter().map(|&x| inputs[x].clone()))?;
            for delta_bar in candidates {
                let params = SingleLetterParams {
                    codebook: codebook.clone(),
                    delta_bar: Some(delta_bar),
                    delta1: delta1.clone(),
                    sequence: sequence.cloned().map(|mut s| {
                        s.first = delta1.clone();
                        s
                    }),
                };
                match self.single_letter_check(theorem, &params) {
                    Ok(c) if c.holds() => return Ok(Some(c)),
                    Ok(_) | Err(Error::NotCapacityAchieving(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(None)
    }
}
