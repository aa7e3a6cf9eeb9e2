use thiserror::Error;

/// Errors raised by the exact-arithmetic routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("exp requires a series with zero constant term")]
    NonZeroConstantTerm,

    #[error("divisor has zero constant term")]
    ZeroDivisor,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix of odd size {0} cannot act on a symplectic lattice")]
    OddDimension(usize),

    #[error("{what} = {value} is outside 0..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("monomial of degree {found} cannot be evaluated on Sym^{power} (needs degree {expected})")]
    DegreeMismatch {
        found: usize,
        expected: usize,
        power: usize,
    },

    #[error("classes live in different symmetric powers")]
    AmbientMismatch,

    #[error("matrix is not symplectic")]
    NotSymplectic,

    #[error("composition of consecutive differentials is nonzero at degree {0}")]
    InvalidComplex(i64),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
