use thiserror::Error;

/// Everything that can go wrong while validating input or computing an
/// invariant. Domain errors carry enough context to state which constraint
/// failed; arithmetic never wraps silently, it surfaces as `Overflow`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator list is empty")]
    EmptyInput,

    #[error("generator {0} is not a positive integer")]
    NonPositiveEntry(i64),

    #[error("generators have gcd {0}, expected 1")]
    GcdNotOne(u64),

    #[error("{0} is not one of the generators")]
    NotAGenerator(u64),

    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),

    #[error("{p} does not divide {a}")]
    DivisorMismatch { p: u64, a: u64 },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("non-integer result in {0}; inputs violate a precondition")]
    NonIntegerResult(&'static str),

    #[error("hypothesis violated: {0}")]
    ConstraintViolation(String),

    #[error("t' = {0} is odd; no closed form applies, use the generic quotient path")]
    TPrimeOdd(u64),

    #[error("internal bound exceeded: {0}")]
    InternalBound(String),

    #[error("mismatch found: {0}")]
    MismatchFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn overflow(what: impl Into<String>) -> Self {
        Error::Overflow(what.into())
    }

    pub(crate) fn constraint(what: impl Into<String>) -> Self {
        Error::ConstraintViolation(what.into())
    }
}
