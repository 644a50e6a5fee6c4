use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum JsrError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("Kronecker product dimension {dim} exceeds cap {cap}")]
    KroneckerCap { dim: usize, cap: usize },

    #[error("product budget exceeded: {formed} words formed, limit {limit}")]
    BudgetExceeded { formed: u64, limit: u64 },

    #[error("numerically ambiguous rank: singular value ratio {ratio:.3e} near cutoff 1e-8")]
    AmbiguousRank { ratio: f64 },

    #[error("not an ideal: closure residual {residual:.3e} above tolerance {tolerance:.1e}")]
    InvalidIdeal { residual: f64, tolerance: f64 },

    #[error("structure constants are not associative: max residual {residual:.3e}")]
    NotAssociative { residual: f64 },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl JsrError {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            JsrError::DimensionMismatch(_)
            | JsrError::InvalidMatrix(_)
            | JsrError::KroneckerCap { .. }
            | JsrError::AmbiguousRank { .. }
            | JsrError::InvalidIdeal { .. }
            | JsrError::NotAssociative { .. }
            | JsrError::UnknownSuite(_)
            | JsrError::Schema(_)
            | JsrError::Usage(_) => 2,
            JsrError::BudgetExceeded { .. } => 3,
            JsrError::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, JsrError>;
