use serde::Serialize;

use super::channel::{BoundChannel, Codebook};
use super::solver::{solve_unchecked, SizeCheck};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::ratio::Ratio;
use crate::uvcore::Symbol;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapacityResult {
    pub delta: Ratio,
    pub count: usize,
    pub bits: Bits,
    pub witness: Codebook,
    pub per_size_feasibility: Vec<SizeCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub pair: (Symbol, Symbol),
    pub equivocation: Ratio,
    pub threshold: Ratio,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Distinguishability {
    pub distinguishable: bool,
    /// The first offending pair in codebook order.
    pub violation: Option<Violation>,
}

impl BoundChannel {
    /// Every distinct pair must have equivocation at most delta/|codebook|.
    pub fn check_distinguishable(&self, codebook: &Codebook, delta: &Ratio) -> Result<Distinguishability> {
        self.table().check_delta(delta)?;
        let threshold = delta / &Ratio::from_u64(codebook.len() as u64);
        let pts = codebook.points();
        for (k, a) in pts.iter().enumerate() {
            for b in &pts[k + 1..] {
                let e = self.equivocation(a, b)?;
                if e > threshold {
                    return Ok(Distinguishability {
                        distinguishable: false,
                        violation: Some(Violation {
                            pair: (a.clone(), b.clone()),
                            equivocation: e,
                            threshold,
                        }),
                    });
                }
            }
        }
        Ok(Distinguishability {
            distinguishable: true,
            violation: None,
        })
    }

    pub fn capacity(&self, delta: &Ratio) -> Result<CapacityResult> {
        self.table().check_delta(delta)?;
        self.capacity_unchecked(delta)
    }

    /// Capacity without the delta < m(V) requirement. The theory needs that
    /// bound for infinite input spaces; over a finite alphabet the maximum
    /// still exists, and some worked examples use a delta above it.
    pub fn capacity_unchecked(&self, delta: &Ratio) -> Result<CapacityResult> {
        if delta.is_negative() {
            return Err(Error::DeltaOutOfRange {
                delta: Box::new(delta.clone()),
                limit: Box::new(self.v_min().clone()),
            });
        }
        let out = solve_unchecked(self.table(), delta);
        let inputs = self.channel().inputs();
        let witness = Codebook::new(out.witness.iter().map(|&i| inputs[i].clone()))?;
        Ok(CapacityResult {
            delta: delta.clone(),
            count: out.count,
            bits: Bits::from_count(out.count as u64),
            witness,
            per_size_feasibility: out.sizes,
        })
    }
}
