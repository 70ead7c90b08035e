use crate::lp::NumericalFailure;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("invalid generator configuration: {0}")]
    Config(String),

    #[error("horizon T = {t} exceeds the enumeration guard max_T = {max_t}")]
    Guard { t: usize, max_t: usize },

    #[error(transparent)]
    Numerical(#[from] NumericalFailure),

    #[error("malformed instance JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
