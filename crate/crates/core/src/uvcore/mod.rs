//! Ground spaces, uncertainty functions, and uncertain pairs with their
//! marginal and conditional ranges.

mod ground;
mod interval;
mod measure;
mod pair;
mod symbol;

pub use ground::{GroundPoint, GroundSet, GroundSubset};
pub use interval::{Interval, IntervalUnion};
pub(crate) use measure::PointMeasure;
pub use measure::{PointLabel, UncertaintyFunction};
pub use pair::{Joint, ReducedPair, Side, UncertainPair};
pub use symbol::Symbol;

use crate::error::Result;
use crate::ratio::Ratio;

pub fn marginal_range(pair: &UncertainPair, side: Side) -> GroundSubset {
    pair.marginal_range(side)
}

pub fn conditional_range(pair: &UncertainPair, side: Side, point: &GroundPoint) -> Result<GroundSubset> {
    pair.conditional_range(side, point)
}

pub fn uncertainty_of(m: &UncertaintyFunction, set: &GroundSubset) -> Result<Ratio> {
    m.measure(set)
}
