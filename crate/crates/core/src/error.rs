use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaborError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested lattice would push an exponential past the representable range.
    #[error("exponent guard tripped: 2*pi*w*{scale} = {exponent:.3} exceeds {limit}")]
    ExponentOverflow {
        exponent: f64,
        scale: f64,
        limit: f64,
    },

    #[error("grid too coarse for the lattice: {0}")]
    Discretization(String),

    #[error("{0}")]
    Numerical(String),
}

impl GaborError {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        GaborError::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, GaborError>;
