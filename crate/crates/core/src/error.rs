use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductors {0} and {1} have no common embedding in this operation")]
    IncompatibleConductors(u32, u32),
    #[error("exponent {k} is not coprime to conductor {n}")]
    NotCoprime { k: i64, n: u32 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("group closure exceeded cap {0}")]
    ClosureExceeded(usize),
    #[error("group mismatch between class functions")]
    GroupMismatch,
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("character table check failed: {0}")]
    TableCheck(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("invariance check failed: {0}")]
    NotInvariant(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },
    #[error("results disagree across primes: {0}")]
    PrimeDisagreement(String),
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate quartic: catalecticant is singular")]
    Degenerate,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
