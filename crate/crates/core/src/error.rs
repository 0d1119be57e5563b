use thiserror::Error;

use crate::series_ring::Valuation;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("element is not a unit (constant term vanishes)")]
    NotAUnit,
    #[error("precision too low: {0}")]
    PrecisionTooLow(String),
    #[error("factors are not coprime enough to lift: {0}")]
    NotCoprime(String),
    #[error("lifting iteration failed to converge: {0}")]
    NoConvergence(String),
    #[error("genericity violated: {0}")]
    GenericityViolation(String),
    #[error("kernel rank {found} does not match expected rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("factor degrees {found:?} do not match the conjugate partition {expected:?}")]
    DegreeMismatch { expected: Vec<u32>, found: Vec<u32> },
    #[error("splitting field needs degree {needed} over the base field, cap is {cap}")]
    ExtensionCapExceeded { needed: usize, cap: usize },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("summands do not span the lattice: assembly determinant has valuation {0:?}")]
    NotDirectSum(Valuation),
    #[error("no generic sample found after {0} attempts")]
    ResampleCapExceeded(usize),
}

impl Error {
    /// Stable name of the variant, used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::NotAUnit => "NotAUnit",
            Error::PrecisionTooLow(_) => "PrecisionTooLow",
            Error::NotCoprime(_) => "NotCoprime",
            Error::NoConvergence(_) => "NoConvergence",
            Error::GenericityViolation(_) => "GenericityViolation",
            Error::RankMismatch { .. } => "RankMismatch",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::ExtensionCapExceeded { .. } => "ExtensionCapExceeded",
            Error::NotNilpotent => "NotNilpotent",
            Error::Overflow(_) => "Overflow",
            Error::NotDirectSum(_) => "NotDirectSum",
            Error::ResampleCapExceeded(_) => "ResampleCapExceeded",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
