use thiserror::Error;

/// Errors raised by field construction, family validation and the sweeps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),

    #[error("reducible modulus: {0}")]
    ReducibleModulus(String),

    #[error("unsupported size: {0}")]
    UnsupportedSize(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("{a} is not invertible modulo {n}")]
    NotInvertible { a: String, n: String },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("coefficient {0} is not admissible for this family")]
    InadmissibleCoefficient(String),

    #[error("character sums need a nonzero gamma")]
    ZeroGamma,

    #[error("{d} does not divide {order}")]
    BadDivisor { d: String, order: String },

    #[error("coefficient must be nonzero")]
    ZeroCoefficient,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
