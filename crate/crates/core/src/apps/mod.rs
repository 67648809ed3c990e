//! Bit-flip codes, equivocation matrices and classifier confusion channels.

mod confusion;
mod hamming;
mod matrix;

pub use confusion::{confusion_from_sets, confusion_ingest};
pub use hamming::{
    hamming_distance_bound, hamming_equivocation, hamming_v_min, lexicode, parse_codebook, radius, BitString,
    HammingReport, PairBound, HAMMING_LIMIT, MAX_BITS,
};
pub use matrix::{matrix_capacity, EquivocationMatrix};
