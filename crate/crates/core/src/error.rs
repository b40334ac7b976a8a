use thiserror::Error;

/// Errors raised by naming construction, solvers and file parsing.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NamingError {
    #[error("invalid interval [{t_min}, {t_max}]: need finite t_min < t_max")]
    InvalidInterval { t_min: f64, t_max: f64 },

    #[error("invalid moment point: {0}")]
    InvalidPoint(String),

    #[error("invalid naming: {0}")]
    InvalidNaming(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("nodes are not pairwise distinct")]
    DegenerateNodes,

    #[error("linear system too ill-conditioned (condition estimate {estimate:.3e})")]
    ConditioningFailure { estimate: f64 },

    #[error("naming is not reducible")]
    NotReducible,

    #[error("naming parity does not match n = {n}")]
    ParityMismatch { n: usize },

    #[error("naming is not proper for n = {n} (twice the index is {twice_index})")]
    NotProper { n: usize, twice_index: usize },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("point is outside the convex hull: {0}")]
    OutsideHull(String),

    #[error("polynomial has non-real roots (largest imaginary part {imag:.3e})")]
    NonRealRoots { imag: f64 },

    #[error("reduction made no progress after {iterations} iterations")]
    ReductionStalled { iterations: usize },

    #[error("oracle failure: {0}")]
    OracleFailure(String),

    #[error("point is not strictly inside the hull")]
    NotInterior,

    #[error("linear part of the curve is not invertible")]
    NotInvertible,

    #[error("n = {n} exceeds the supported maximum of {cap}")]
    DimensionCap { n: usize, cap: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, NamingError>;
