use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the estimation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exact observation must be finite, got {0}")]
    NonFiniteExact(f64),

    #[error("censoring interval must satisfy lower < upper, got ({lower}, {upper}]")]
    InvalidInterval { lower: f64, upper: f64 },

    #[error("sample must contain at least one observation")]
    EmptySample,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("evaluation point must have finite coordinates")]
    NonFinitePoint,

    #[error("coordinate {dimension} has no finite interval endpoints")]
    AxisEmpty { dimension: usize },

    #[error("grid axis must be strictly increasing and finite")]
    InvalidAxis,

    #[error("grid has {points} points, exceeding the cap of {cap}")]
    GridTooLarge { points: u128, cap: u64 },

    #[error("cdf values must lie in [0, 1]")]
    InvalidCdfValue,

    #[error("one-dimensional cdf values must be non-decreasing along the axis")]
    NonMonotoneCdf,

    #[error("array shape {found:?} does not match expected {expected:?}")]
    ShapeMismatch {
        expected: Vec<usize>,
        found: Vec<usize>,
    },

    #[error("bandwidth components must be positive and finite")]
    InvalidBandwidth,

    #[error("weights must be non-negative with total mass at most 1")]
    InvalidWeights,

    #[error("adaptive quadrature failed to converge")]
    QuadratureNonConvergence,

    #[error("operation requires at least {required} observations, sample has {n}")]
    SampleTooSmall { n: usize, required: usize },

    #[error("observation index {index} out of range for sample of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("bandwidth search space contains no candidates")]
    EmptySearchSpace,

    #[error("kernel mass at the query point underflowed to zero")]
    ZeroDenominator,

    #[error("likelihood enumeration needs {terms} terms, exceeding the cap of {cap}")]
    EnumerationTooLarge { terms: u128, cap: u64 },

    #[error("all per-type estimates are zero; normalized estimate undefined")]
    DegenerateNormalizer,

    #[error("censored trials are impossible under the supplied observation probabilities")]
    InconsistentCensoring,

    #[error("invalid counts: {0}")]
    InvalidCounts(String),

    #[error("probability out of range [0, 1]: {0}")]
    InvalidProbability(f64),

    #[error("table structure does not match the requested analysis: {0}")]
    StructureMismatch(String),
}
