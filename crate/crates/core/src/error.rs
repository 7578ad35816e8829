use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("sampled field is not periodic over one wavelength (endpoint mismatch {mismatch:.3e})")]
    NotPeriodic { mismatch: f64 },

    #[error("operators live on different truncated spaces")]
    SpaceMismatch,

    #[error("no stationary states at total momentum p = {p}")]
    NoStatesAtMomentum { p: f64 },

    #[error("integrator failed at eta = {eta:.6}: step size {step:.3e} after {steps} steps")]
    Integrator { eta: f64, step: f64, steps: usize },

    #[error("|p| = {p} is outside the Mathieu mapping domain |p| < 2 (sqrt(1 - p^2/4) is not real)")]
    MathieuDomain { p: f64 },

    #[error("undersampled grid: {given} samples given, at least {required} required")]
    Undersampled { given: usize, required: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
