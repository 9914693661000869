use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gain {field} must be a nonnegative magnitude, got {value}")]
    NegativeMagnitude { field: &'static str, value: f64 },

    #[error("{field} is not finite")]
    NonFinite { field: &'static str },

    #[error("{field} must be strictly positive, got {value}")]
    NonPositive { field: &'static str, value: f64 },

    #[error("conditional slice {slice} sums to {sum} (deviation {deviation:e})")]
    NotNormalized {
        slice: String,
        sum: f64,
        deviation: f64,
    },

    #[error("negative probability {value} at {location}")]
    NegativeProbability { location: String, value: f64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("alphabet size {size} of {name} outside [1, {max}]")]
    AlphabetSize {
        name: &'static str,
        size: usize,
        max: usize,
    },

    #[error("invalid relay split: |b1c|^2 + |b2c|^2 = {norm_sqr}")]
    InvalidBeta { norm_sqr: f64 },

    #[error("unknown mutual-information expression `{0}`")]
    UnknownExpression(String),

    #[error("negative SNR {0}")]
    NegativeSnr(f64),

    #[error("empty pentagon family")]
    EmptyFamily,

    #[error("empty sampling grid")]
    EmptyGrid,

    #[error("direction grid needs at least 3 directions, got {0}")]
    TooFewDirections(usize),

    #[error("optimizer failed: {0}")]
    OptimizerFailure(String),

    #[error("closed form needs |h1c| = |h2c| and real nonnegative cross gains: {0}")]
    NotSymmetric(String),

    #[error("variable {0} is not an axis of the joint distribution")]
    VariableNotPresent(String),

    #[error("variable {0} appears in more than one argument set")]
    OverlappingSets(String),

    #[error("distribution violates the required factorization: {0}")]
    FactorizationViolated(String),

    #[error("bad sequence shape: {0}")]
    BadSequenceShape(String),

    #[error("unknown fixture kind `{0}`")]
    UnknownKind(String),

    #[error("invalid regime map: {0}")]
    InvalidMap(String),

    #[error("invalid pentagon bound {field} = {value}")]
    InvalidPentagon { field: &'static str, value: f64 },
}
