use thiserror::Error;

/// Errors surfaced by the exact kernels, the series layer and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,

    #[error("level c = {0} is not coprime to 6 (gcd(c, 6) must be 1)")]
    NotCoprimeToSix(u64),

    #[error("{0} must be a prime p >= 5")]
    NotAdmissiblePrime(u64),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("series operation undefined: {0}")]
    Series(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("unknown series function `{0}`")]
    UnknownFunction(String),

    #[error("linear algebra failure: {0}")]
    LinearAlgebra(String),

    #[error("malformed serialized value: {0}")]
    Decode(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
