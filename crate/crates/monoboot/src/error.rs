use thiserror::Error;

/// Errors produced by sample construction, estimators and the bootstrap.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("xs and ys differ in length ({xs} vs {ys})")]
    LengthMismatch { xs: usize, ys: usize },
    #[error("design points must be strictly increasing (violated at index {index})")]
    UnsortedDesign { index: usize },
    #[error("design point {value} at index {index} lies outside [0, 1]")]
    DesignOutOfRange { index: usize, value: f64 },
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("step values must be nondecreasing (violated at index {index})")]
    DecreasingValues { index: usize },
    #[error("bandwidth {h} outside (0, 0.5)")]
    InvalidBandwidth { h: f64 },
    #[error("t = {t} lies in the boundary region for h = {h}; use slse_boundary")]
    BoundaryPoint { t: f64, h: f64 },
    #[error("t = {t} is an interior point for h = {h}; use slse_at")]
    InteriorPoint { t: f64, h: f64 },
    #[error("evaluation point {t} outside [0, 1]")]
    PointOutOfRange { t: f64 },
    #[error("no data in window around t = {t}")]
    EmptyWindow { t: f64 },
    #[error("need at least {needed} observations, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("bootstrap replications must be at least 2, got {0}")]
    InvalidReplications(usize),
    #[error("alpha = {0} outside (0, 1)")]
    InvalidAlpha(f64),
    #[error("scale must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("Studentization impossible: bootstrap residual scale is zero")]
    DegenerateScale,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("sigma0 must be nonnegative, got {0}")]
    InvalidSigma(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
