use thiserror::Error;

/// Errors raised by the arithmetic, geometry and lattice routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("need at least 3 fibers, got {0}")]
    TooFewFibers(usize),

    #[error("fiber order a{} = {value} must be at least 2", .index + 1)]
    BadGenerator { index: usize, value: u64 },

    /// `first`/`second` are 0-based positions in the input tuple.
    #[error("not pairwise coprime ({first_value},{second_value})")]
    NotPairwiseCoprime {
        first: usize,
        second: usize,
        first_value: u64,
        second_value: u64,
    },

    #[error("gcd({h}, {k}) != 1")]
    NotCoprime { h: i64, k: u64 },

    #[error("identity requires A {expected}, but A = {product}")]
    WrongParity {
        product: u64,
        expected: &'static str,
    },

    #[error("unsupported dimension n = {0}; only n = 3 and n = 4 are supported")]
    UnsupportedDimension(usize),

    #[error("fiber index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("point {0:?} is not in the simplex")]
    NotInSimplex(Vec<i64>),

    #[error("point {0:?} is outside the parallelepiped")]
    OutOfBox(Vec<i64>),

    #[error("modulus k must be at least 1")]
    ZeroModulus,

    #[error("product of the tuple overflows 64 bits")]
    Overflow,

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
