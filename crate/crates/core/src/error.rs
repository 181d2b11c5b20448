//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, LabError>;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("grid mismatch between operands")]
    GridMismatch,

    #[error("field is not Hermitian-symmetric at mode {0}")]
    SymmetryViolation(i64),

    #[error("expected a mean-zero field, mean coefficient is {0:e}")]
    NonzeroMean(f64),

    #[error("exponential e^{{iF}} under-resolved: tail mass {tail:e} exceeds {limit:e}")]
    UnderResolved { tail: f64, limit: f64 },

    #[error("inconsistent gauge pair: relative mismatch {0:e}")]
    InconsistentGauge(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("solution blew up at t = {time}: L2 norm {norm:e} exceeds {limit:e}")]
    BlowUp { time: f64, norm: f64, limit: f64 },

    #[error("time sampling: {0}")]
    Sampling(String),

    #[error("window mismatch: {0}")]
    WindowMismatch(String),

    #[error("zero denominator in {0}")]
    ZeroDenominator(&'static str),

    #[error("not enough usable points for a fit: {0}")]
    InsufficientData(usize),

    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl LabError {
    /// Whether the failure is a numerical breakdown (blow-up or an
    /// under-resolved gauge exponential) rather than bad input.
    pub fn is_numerical_breakdown(&self) -> bool {
        matches!(self, LabError::BlowUp { .. } | LabError::UnderResolved { .. })
    }
}
