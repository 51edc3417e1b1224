use thiserror::Error;

/// Failure modes shared by every kernel in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("integrand returned a non-finite value at x = {x}")]
    Evaluation { x: f64 },
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("invalid option: {0}")]
    InvalidOption(String),
    #[error("bracket {index} has no sign change on [{a}, {b}]")]
    NoSignChange { index: usize, a: f64, b: f64 },
    #[error("iteration limit reached after {0} steps")]
    MaxIterations(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("bound {bound} exceeds the cap {cap}")]
    BoundExceeded { bound: u64, cap: u64 },
    #[error("term sequence is not monotone beyond index {0}")]
    NonMonotone(usize),
    #[error("need at least {need} samples, got {got}")]
    InsufficientSamples { need: usize, got: usize },
    #[error("sequence diverges: {0}")]
    Divergence(String),
    #[error("did not converge: {0}")]
    NotConverged(String),
    #[error("no identity with id `{0}`")]
    NotFound(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
