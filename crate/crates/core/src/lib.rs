//! Exact non-stochastic information calculus.
//!
//! Uncertain variables are described only by their ranges. This crate
//! measures those ranges with rational-valued uncertainty functions, builds
//! overlap families and the mutual information they carry, and computes
//! exact channel capacities by clique search, with brute-force oracles for
//! checking the coding theorems on small instances.

pub mod apps;
pub mod bits;
pub mod chancap;
pub mod error;
pub mod indexset;
pub mod infocalc;
pub mod memoryless;
pub mod ratio;
pub mod uvcore;

pub use bits::{Bits, Rate};
pub use error::{Error, Result};
pub use indexset::IndexSet;
pub use ratio::Ratio;
