use rayon::prelude::*;
use serde::Serialize;

use super::product::{HorizonRate, ProductChannel};
use super::sequence::ConfidenceSequence;
use super::single_letter::{Quantity, SingleLetterCertificate, Theorem};
use crate::bits::{Bits, Rate};
use crate::chancap::{BoundChannel, Channel};
use crate::error::{Error, Result};
use crate::uvcore::UncertaintyFunction;

/// A capacity settled by a passing certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedValue {
    pub quantity: Quantity,
    pub bits: Bits,
    pub certificate: SingleLetterCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapacityProfile {
    pub sequence: ConfidenceSequence,
    pub rates: Vec<HorizonRate>,
    /// Smallest and largest rate over the computed horizons only.
    pub horizon_min: Rate,
    pub horizon_max: Rate,
    /// Always "horizon-N bound": these are not infinite-horizon values.
    pub horizon_label: String,
    pub certified: Vec<CertifiedValue>,
    /// Variants tried without a passing certificate, with the reason.
    pub uncertified: Vec<(Theorem, String)>,
}

/// Rate of the n-fold product channel at level `delta`.
pub fn rate_at_horizon(ch: &Channel, m: &UncertaintyFunction, delta: &crate::Ratio, n: u32) -> Result<HorizonRate> {
    ProductChannel::new(ch, n)?.rate(m, delta)
}

pub fn capacity_profile(
    ch: &Channel,
    m: &UncertaintyFunction,
    seq: &ConfidenceSequence,
    n_max: u32,
) -> Result<CapacityProfile> {
    if n_max == 0 {
        return Err(Error::ZeroHorizon);
    }
    let rates = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let delta = seq
                .at(n)
                .ok_or_else(|| Error::InvalidSequence(format!("no term for horizon {n}")))?;
            rate_at_horizon(ch, m, &delta, n)
        })
        .collect::<Result<Vec<_>>>()?;
    let horizon_min = rates.iter().map(|r| r.rate).min().expect("n_max >= 1");
    let horizon_max = rates.iter().map(|r| r.rate).max().expect("n_max >= 1");

    let bound = BoundChannel::new(ch, m)?;
    let found = Theorem::ALL
        .par_iter()
        .map(|&t| (t, bound.find_certificate(t, Some(seq))))
        .collect::<Vec<_>>();
    let mut certified = Vec::new();
    let mut uncertified = Vec::new();
    for (t, outcome) in found {
        match outcome {
            Ok(Some(c)) => certified.push(CertifiedValue {
                quantity: t.quantity(),
                bits: c.capacity_bits.expect("passing certificate"),
                certificate: c,
            }),
            Ok(None) => uncertified.push((t, "no codebook and level passed every condition".to_string())),
            Err(e) => uncertified.push((t, e.to_string())),
        }
    }
    Ok(CapacityProfile {
        sequence: seq.clone(),
        rates,
        horizon_min,
        horizon_max,
        horizon_label: format!("horizon-{n_max} bound"),
        certified,
        uncertified,
    })
}
