use thiserror::Error;

/// Errors raised by the numerical kernel, the channel algebra and the
/// reversal constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    /// The state has an eigenvalue at or below the singularity threshold, so
    /// its inverse square root does not exist.
    #[error("invariant state not invertible (smallest eigenvalue {min_eigenvalue:.3e})")]
    SingularState { min_eigenvalue: f64 },

    #[error("channel is not trace preserving (residual {residual:.3e})")]
    NotTracePreserving { residual: f64 },

    #[error("channel is not unital (residual {residual:.3e}); its dual is not a channel")]
    NotUnital { residual: f64 },

    #[error("two-Kraus reversal needs exactly 2 Kraus operators, found {found}")]
    WrongKrausCount { found: usize },

    #[error("leading Kraus index {index} out of range for {count} operators")]
    LeadingIndexOutOfRange { index: usize, count: usize },

    #[error("fixed point is not unique (eigenvalue-1 space has dimension {dimension})")]
    NonUniqueFixedPoint { dimension: usize },

    #[error("transition ({a}, {o}) has zero probability in both directions")]
    UndefinedTransition { a: usize, o: usize },

    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
