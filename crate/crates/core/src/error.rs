use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the formula being evaluated.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("phase-matching violated for {component} component: {rule} (relative residual {residual:e})")]
    PhaseMatching {
        component: &'static str,
        rule: &'static str,
        residual: f64,
    },

    #[error("integration step too large: {0}")]
    StepTooLarge(String),

    #[error("integration failed at z = {last_z} cm: {reason}")]
    Integration { last_z: f64, reason: String },

    #[error("insufficient growth: {0}")]
    InsufficientGrowth(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
