use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("level k must be at least 1 (got {0})")]
    BadLevel(u32),
    #[error("group is too large for this representation: {0}")]
    TooLarge(String),
    #[error("element does not belong to this context: {0}")]
    ContextMismatch(String),
    #[error("incompatible homomorphism: {0}")]
    BadHom(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid subgroup specification: {0}")]
    Spec(String),
    #[error("budget exceeded: enumeration of {p}^{log} elements exceeds the limit {budget}")]
    Budget { p: u64, log: u32, budget: u64 },
    #[error("no closed form available: {0}")]
    NoFormula(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
