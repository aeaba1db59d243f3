use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] edms_core::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit code: 2 for bad input, 3 for requests that cannot be met, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use edms_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::Infeasible(_) | E::TooLarge { .. } | E::BinOverflow(_)) => 3,
            CliError::Core(E::Io(_)) | CliError::Io(_) | CliError::Csv(_) => 1,
            CliError::Core(_) | CliError::Json(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}
