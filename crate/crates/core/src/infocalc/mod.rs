//! Association levels, delta-connected components, overlap families and the
//! mutual information they carry, plus the taxicab view of the joint range.

mod analysis;
mod family;
mod levels;
mod taxicab;

pub use analysis::{Analysis, AssociationSets};
pub use family::{family_audit, FamilyCheck, MiResult, MiStatus, OverlapFamily, Regime};
pub use levels::{classify_levels, Level, LevelStatus};
pub use taxicab::{JointPoint, TaxicabChecks, TaxicabFamily};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ratio::Ratio;
use crate::uvcore::{GroundSet, GroundSubset, Side, UncertainPair, UncertaintyFunction};

/// Which variable the information is about: `XGivenY` measures what Y
/// reveals about X and uses the x sections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    XGivenY,
    YGivenX,
}

impl Direction {
    pub fn side(self) -> Side {
        match self {
            Direction::XGivenY => Side::X,
            Direction::YGivenX => Side::Y,
        }
    }
}

pub fn association_sets(
    pair: &UncertainPair,
    m_x: &UncertaintyFunction,
    m_y: &UncertaintyFunction,
) -> Result<AssociationSets> {
    Ok(Analysis::new(pair, m_x, m_y)?.association_sets())
}

/// Placeholder measure for the side an operation never measures.
fn filler(ground: &GroundSet) -> UncertaintyFunction {
    match ground {
        GroundSet::Finite { labels } => UncertaintyFunction::cardinality(labels.len().max(1) as u64, 1),
        GroundSet::Intervals { .. } => UncertaintyFunction::lebesgue(Ratio::one()),
    }
}

/// Delta-connected components of `side`, measured with `m` on that side.
pub fn delta_components(
    pair: &UncertainPair,
    m: &UncertaintyFunction,
    delta: &Ratio,
    side: Side,
) -> Result<Vec<GroundSubset>> {
    let analysis = match side {
        Side::X => Analysis::new(pair, m, &filler(pair.y_ground()))?,
        Side::Y => Analysis::new(pair, &filler(pair.x_ground()), m)?,
    };
    let blocks = analysis.delta_components(side, delta)?;
    Ok(blocks.iter().map(|b| analysis.reduced().to_subset(side, b)).collect())
}

pub fn overlap_family(
    pair: &UncertainPair,
    m_x: &UncertaintyFunction,
    m_y: &UncertaintyFunction,
    delta: &Ratio,
    side: Side,
) -> Result<Option<OverlapFamily>> {
    Ok(Analysis::new(pair, m_x, m_y)?.overlap_family(side, delta))
}

pub fn mutual_information(
    pair: &UncertainPair,
    m_x: &UncertaintyFunction,
    m_y: &UncertaintyFunction,
    delta: &Ratio,
    direction: Direction,
) -> Result<MiResult> {
    Ok(Analysis::new(pair, m_x, m_y)?.mutual_information(direction.side(), delta))
}

pub fn taxicab_family(
    pair: &UncertainPair,
    m_x: &UncertaintyFunction,
    m_y: &UncertaintyFunction,
    delta1: &Ratio,
    delta2: &Ratio,
) -> Result<TaxicabFamily> {
    Ok(Analysis::new(pair, m_x, m_y)?.taxicab_family(delta1, delta2))
}
