//! Information amounts carried as exact integer counts.
//!
//! `Bits` is log2 of a positive count; `Rate` is log2(count)/n for a horizon n.
//! Comparisons never touch floating point: rates compare via count^m vs count'^n.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigUint;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "BitsRepr", try_from = "BitsRepr")]
pub struct Bits {
    count: u64,
}

impl Bits {
    pub fn from_count(count: u64) -> Self {
        assert!(count >= 1, "information count must be positive");
        Bits { count }
    }

    pub fn zero() -> Self {
        Bits { count: 1 }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn is_zero(&self) -> bool {
        self.count == 1
    }

    /// Decimal rendering of log2(count), six places.
    pub fn render(&self) -> String {
        render_log2(self.count, 1)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct BitsRepr {
    count: u64,
    bits: String,
}

impl From<Bits> for BitsRepr {
    fn from(b: Bits) -> Self {
        BitsRepr {
            count: b.count,
            bits: b.render(),
        }
    }
}

impl TryFrom<BitsRepr> for Bits {
    type Error = String;
    fn try_from(r: BitsRepr) -> Result<Self, String> {
        if r.count == 0 {
            return Err("count must be positive".into());
        }
        Ok(Bits { count: r.count })
    }
}

/// log2(count) / horizon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Rate {
    pub count: u64,
    pub horizon: u32,
}

impl Rate {
    pub fn new(count: u64, horizon: u32) -> Self {
        assert!(count >= 1 && horizon >= 1);
        Rate { count, horizon }
    }

    pub fn per_symbol(&self) -> String {
        render_log2(self.count, self.horizon)
    }
}

impl Ord for Rate {
    fn cmp(&self, other: &Self) -> Ordering {
        // log2(a)/n vs log2(b)/m  <=>  a^m vs b^n
        let lhs = BigUint::from(self.count).pow(other.horizon);
        let rhs = BigUint::from(other.count).pow(self.horizon);
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Rate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Rate {
    /// Exact equality of the per-symbol values (not of the representation).
    pub fn same_value(&self, other: &Rate) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

fn render_log2(count: u64, horizon: u32) -> String {
    if count == 1 {
        return "0".into();
    }
    if count.is_power_of_two() && count.trailing_zeros().is_multiple_of(horizon) {
        return (count.trailing_zeros() / horizon).to_string();
    }
    format!("{:.6}", (count as f64).log2() / horizon as f64)
}
