use thiserror::Error;

/// Errors raised by the arithmetic and extension-group machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),

    #[error("conductor {from} does not divide {to}")]
    NotASubfield { from: u64, to: u64 },

    #[error("zero element has no {0}")]
    ZeroElement(&'static str),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    #[error("degree {degree} exceeds the supported bound {bound}")]
    DegreeGuard { degree: u64, bound: u64 },

    #[error("no generator of norm {norm} found with coordinates bounded by {bound}")]
    GeneratorSearchExhausted { norm: String, bound: i64 },

    #[error("unit search spans dimension {found}, expected {expected}")]
    UnitRankDeficit { found: usize, expected: usize },

    #[error("p-th root test inconclusive for {0}")]
    Inconclusive(String),

    #[error("insufficient p-adic precision: need {needed}, have {available}")]
    Precision { needed: i64, available: i64 },

    #[error("element is indistinguishable from zero at precision {0}")]
    IndistinguishableFromZero(i64),

    #[error("basis does not span: {0}")]
    DoesNotSpan(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
