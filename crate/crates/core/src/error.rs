use thiserror::Error;

/// Failures surfaced by the computations in this crate.
///
/// Each variant has a stable machine-readable code, see [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported parity: {0}")]
    UnsupportedParity(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("matrix is singular (rank {rank} of {dim})")]
    SingularMatrix { rank: usize, dim: usize },

    #[error("period basis is deficient for level {level}, w = {w}: S1 has rank {rank} < {dim}")]
    BasisDeficient { level: u64, w: u32, rank: usize, dim: usize },

    #[error("space of cusp forms has dimension 0 (level {level}, weight {weight})")]
    DimensionZero { level: u64, weight: u32 },

    #[error("precision too low: need {required} coefficients, have {available}")]
    PrecisionTooLow { required: usize, available: usize },

    #[error("linear system is inconsistent: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Precondition(_) => "PRECONDITION",
            Error::UnsupportedParity(_) => "UNSUPPORTED_PARITY",
            Error::Unsupported(_) => "UNSUPPORTED",
            Error::SingularMatrix { .. } => "SINGULAR_MATRIX",
            Error::BasisDeficient { .. } => "BASIS_DEFICIENT",
            Error::DimensionZero { .. } => "DIMENSION_ZERO",
            Error::PrecisionTooLow { .. } => "PRECISION_TOO_LOW",
            Error::Inconsistent(_) => "INCONSISTENT_SYSTEM",
        }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
