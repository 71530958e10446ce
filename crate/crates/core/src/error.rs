use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("profile `{0}` is not evaluable pointwise")]
    NonEvaluable(String),

    #[error("no closed-form antiderivative for `{0}` in the supported family set")]
    UnsupportedAntiderivative(String),

    #[error("term speed {found} does not match the phase speed {expected}")]
    PhaseMismatch { expected: f64, found: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("coefficient {name} is not positive ({value}) at T = {t}")]
    NonPositiveCoefficient { name: &'static str, t: f64, value: f64 },

    #[error("spectral grid too coarse: Nyquist wavenumber {nyquist} is below {required}")]
    GridTooCoarse { nyquist: f64, required: f64 },

    #[error("CFL violated: max speed * dt / dx = {ratio} exceeds 1 (dt = {dt}, dx = {dx})")]
    CflViolation { dt: f64, dx: f64, ratio: f64 },

    #[error("gyricity must be non-zero for the closed-form rotation solution")]
    DivisionByZero,
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

/// Checks that `value` is finite and strictly positive.
pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::invalid(name, format!("positive required, got {value}")))
    }
}
