use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parameter mismatch: {0}")]
    ParamsMismatch(String),

    #[error("leading input coefficient is zero; strip leading zeros before inverting")]
    ZeroLeadingCoefficient,

    #[error("input spectrum is identically zero")]
    AllZeroInput,

    #[error("insufficient data: need {needed} entries, have {available}")]
    InsufficientData { needed: usize, available: usize },

    #[error("singular denominator at m = {m}: |h_m| = {magnitude:e}")]
    SingularDenominator { m: usize, magnitude: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
