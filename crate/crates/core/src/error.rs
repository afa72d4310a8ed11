use thiserror::Error;

use crate::ring::Bidegree;

/// Errors surfaced by the library. Parse errors carry a source position;
/// everything else is an algebraic precondition violation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero polynomial has no bidegree")]
    ZeroPolynomial,

    #[error("polynomial is not bihomogeneous: terms of bidegree {0} and {1}")]
    NotBihomogeneous(Bidegree, Bidegree),

    #[error("exponent arithmetic overflowed the 16-bit bound")]
    ExponentOverflow,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("saturation did not stabilize within {0} colon steps")]
    SaturationDiverged(usize),

    #[error("operation needs at least one generator")]
    EmptyGenerators,

    #[error("operation is not available in a quotient ring; lift to the covering polynomial ring first")]
    QuotientUnsupported,

    #[error("expected a sequence of monomials")]
    NotMonomial,

    #[error("input is not an M-sequence")]
    NotMSequence,

    #[error("sequence is too long for permutation search (limit {0})")]
    TooManyPermutations(usize),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
