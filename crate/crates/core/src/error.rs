use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("iteration cap of {cap} reached in {what}")]
    IterationCap { what: String, cap: usize },
    #[error("not stabilized: {0}")]
    NotStabilized(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("inconsistent exact sequence: {0}")]
    Inconsistent(String),
    #[error("not supported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
