use thiserror::Error;

/// Errors shared across the crate. Variants constructed with
/// [`Error::internal`] indicate a broken invariant in this library rather
/// than bad input; callers should treat them as bugs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("group enumeration exceeded the cap of {cap} elements")]
    GroupCapExceeded { cap: usize },
    #[error("symmetric group of degree {n} not supported (maximum {max})")]
    DegreeTooLarge { n: usize, max: usize },
    #[error("vector must be strictly positive")]
    NotPositive,
    #[error("vector must be nonnegative")]
    NotNonnegative,
    #[error("exact mode requires integer exponents")]
    NonIntegralExponent,
    #[error("exponent out of supported range")]
    ExponentOutOfRange,
    #[error("totals differ: {left} vs {right}")]
    TotalMismatch { left: String, right: String },
    #[error("not strictly majorized: {0}")]
    NotStrictlyMajorized(String),
    #[error("not majorized: {0}")]
    NotMajorized(String),
    #[error("matrix is not doubly stochastic: {0}")]
    NotDoublyStochastic(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("certificate failed verification: {0}")]
    CertificateInvalid(String),
    #[error("internal invariant breach: {0}")]
    Internal(String),
}

impl Error {
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// True for failures that can only come from a bug in this crate,
    /// never from user input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
