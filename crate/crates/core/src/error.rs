use thiserror::Error;

use crate::ratio::Ratio;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not an exact rational: {0:?} (expected p/q or an integer)")]
pub struct ParseRatioError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ground set: {0}")]
    InvalidGround(String),
    #[error("invalid pair: {0}")]
    InvalidPair(String),
    #[error("the pair has an empty joint range")]
    EmptyPair,
    #[error("point {0} lies outside the marginal range")]
    PointOutsideRange(String),
    #[error("uncertainty function does not fit this ground set: {0}")]
    IncompatibleGround(String),
    #[error("overlap ratio {ratio} does not exceed level {delta}; components are ill-defined")]
    NotDisassociated { ratio: Box<Ratio>, delta: Box<Ratio> },
    #[error("equivocation of a symbol with itself is undefined ({0})")]
    SamePoint(String),
    #[error("delta {delta} is outside [0, {limit})")]
    DeltaOutOfRange { delta: Box<Ratio>, limit: Box<Ratio> },
    #[error("alphabet of {size} symbols exceeds the exhaustive limit of {limit}")]
    AlphabetTooLarge { size: usize, limit: usize },
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error("uncertainty function {0} does not factor over products")]
    NonProductUncertainty(String),
    #[error("horizon {horizon} needs {points} product points, above the limit of {limit}")]
    HorizonTooLarge { horizon: u32, points: u128, limit: u128 },
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("missing parameter: {0}")]
    MissingParameter(String),
    #[error("invalid confidence sequence: {0}")]
    InvalidSequence(String),
    #[error("codebook does not attain the one-symbol capacity: {0}")]
    NotCapacityAchieving(String),
    #[error("bit strings have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("length {0} exceeds the exhaustive limit of {1}")]
    LengthTooLarge(usize, usize),
    #[error("codebook is not distinguishable: pair ({0}, {1})")]
    NotDistinguishable(String, String),
    #[error("malformed row {row}: {reason}")]
    MalformedRow { row: usize, reason: String },
    #[error(transparent)]
    Ratio(#[from] ParseRatioError),
}

pub type Result<T> = std::result::Result<T, Error>;
