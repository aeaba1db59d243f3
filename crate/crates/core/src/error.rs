use thiserror::Error;

/// Errors produced by model validation, the exponent engines, and the simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("state index {index} out of range for {len} states")]
    UnknownState { index: usize, len: usize },

    #[error("state distribution has {got} entries but the model has {expected} states")]
    StateMismatch { expected: usize, got: usize },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("blocklength {n} exceeds the limit of {max} for {what}")]
    TooLarge { n: usize, max: usize, what: &'static str },

    #[error("bin count {0} does not fit in 32 bits")]
    BinOverflow(u128),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
