//! Channels as set-valued maps, equivocation, distinguishable codebooks and
//! exact capacity, with brute-force oracles for the coding theorems.

mod avg;
mod capacity;
mod channel;
mod oracle;
pub(crate) mod solver;

pub use avg::{AverageBounds, AverageCapacity, AVERAGE_LIMIT};
pub use capacity::{CapacityResult, Distinguishability, Violation};
pub use channel::{BoundChannel, Channel, Codebook, EquivocationTable};
pub use oracle::{CodingReport, CodingRow, MiSupResult, ORACLE_LIMIT};
pub use solver::{solve, solve_unchecked, SizeCheck, SolverOutcome};

use crate::error::Result;
use crate::ratio::Ratio;
use crate::uvcore::{Symbol, UncertainPair, UncertaintyFunction};

pub fn equivocation(ch: &Channel, m: &UncertaintyFunction, a: &Symbol, b: &Symbol) -> Result<Ratio> {
    BoundChannel::new(ch, m)?.equivocation(a, b)
}

pub fn check_distinguishable(
    ch: &Channel,
    m: &UncertaintyFunction,
    cb: &Codebook,
    delta: &Ratio,
) -> Result<Distinguishability> {
    BoundChannel::new(ch, m)?.check_distinguishable(cb, delta)
}

pub fn capacity(ch: &Channel, m: &UncertaintyFunction, delta: &Ratio) -> Result<CapacityResult> {
    BoundChannel::new(ch, m)?.capacity(delta)
}

pub fn induced_pair(ch: &Channel, cb: &Codebook) -> Result<UncertainPair> {
    ch.induced_pair(cb)
}

pub fn mi_sup_oracle(ch: &Channel, m: &UncertaintyFunction, delta: &Ratio) -> Result<MiSupResult> {
    BoundChannel::new(ch, m)?.mi_sup_oracle(delta)
}

pub fn verify_coding_theorem(ch: &Channel, m: &UncertaintyFunction, grid: &[Ratio]) -> Result<CodingReport> {
    BoundChannel::new(ch, m)?.verify_coding_theorem(grid)
}

pub fn avg_overlap_capacity(ch: &Channel, m: &UncertaintyFunction, delta: &Ratio) -> Result<AverageCapacity> {
    BoundChannel::new(ch, m)?.avg_overlap_capacity(delta)
}
