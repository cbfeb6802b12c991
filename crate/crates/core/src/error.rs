use thiserror::Error;

/// Errors raised by the library. Every variant is a domain error; the CLI
/// maps all of them to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {p}^{e} exceeds the supported bound 2^31")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("{0}")]
    InvalidArgument(String),
    #[error("period {m} is not coprime to the characteristic {p}")]
    NotCoprime { m: u64, p: u64 },
    #[error("seed has length {got}, recursion has order {expected}")]
    SeedLength { expected: usize, got: usize },
    #[error("no element of order {m} in a field of size {q}")]
    NoRootOfUnity { m: u64, q: u64 },
    #[error("polynomial does not split within extension degree {0}")]
    NoSplit(u32),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
