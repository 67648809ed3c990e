//! Stationary memoryless channels used over many steps: product channels,
//! rates at finite horizons, tensorization, and single-letter certificates
//! for the infinite-horizon capacities.

mod product;
mod profile;
mod sequence;
mod single_letter;
mod tensor;

pub use product::{
    product_uncertainty, tuple_label, HorizonCheck, HorizonRate, ProductChannel, CLIQUE_POINT_LIMIT, FAMILY_POINT_LIMIT,
};
pub use profile::{capacity_profile, rate_at_horizon, CapacityProfile, CertifiedValue};
pub use sequence::{ConfidenceSequence, SequenceRule, TailCheck};
pub use single_letter::{Condition, Quantity, SingleLetterCertificate, SingleLetterParams, Theorem};
pub use tensor::{tensorization_check, ProductFamilyCheck, TensorReport, TensorStatus};

use crate::chancap::{BoundChannel, Channel};
use crate::error::Result;
use crate::ratio::Ratio;
use crate::uvcore::UncertaintyFunction;

pub fn single_letter_check(
    ch: &Channel,
    m: &UncertaintyFunction,
    theorem: Theorem,
    params: &SingleLetterParams,
) -> Result<SingleLetterCertificate> {
    BoundChannel::new(ch, m)?.single_letter_check(theorem, params)
}

/// Clique-search rate at horizon `n` next to the product-space sup of
/// mutual information.
pub fn horizon_check(ch: &Channel, m: &UncertaintyFunction, delta: &Ratio, n: u32) -> Result<HorizonCheck> {
    ProductChannel::new(ch, n)?.check(m, delta)
}
