use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum VmsError {
    #[error("mesh needs at least 2 elements, got {0}")]
    TooFewElements(usize),

    #[error("mode index must be >= 1, got {0}")]
    InvalidModeIndex(usize),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("zero pivot at row {index} in tridiagonal elimination")]
    SingularPivot { index: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("element exponent |c h / (2 mu)| = {0} overflows double precision")]
    PecletOverflow(f64),

    #[error("degenerate bubble problem: characteristic roots coincide")]
    DegenerateBubble,

    #[error("time grid mismatch: T = {t_final} is not a multiple of k = {k}")]
    TimeGridMismatch { t_final: f64, k: f64 },

    #[error("solver failed at step {step}: {source}")]
    StepFailed {
        step: usize,
        #[source]
        source: Box<VmsError>,
    },

    #[error("element Peclet number P_h = {0} >= 1, CFL bound undefined")]
    PecletAboveOne(f64),

    #[error("nonpositive error value {value} at sample {index}")]
    NonPositiveError { index: usize, value: f64 },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),
}

pub type Result<T> = std::result::Result<T, VmsError>;

pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(VmsError::InvalidParameter {
            name,
            reason: format!("must be positive and finite, got {value}"),
        })
    }
}

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(VmsError::InvalidParameter {
            name,
            reason: format!("must be finite, got {value}"),
        })
    }
}
