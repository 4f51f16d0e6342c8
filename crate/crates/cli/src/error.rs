use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error(transparent)]
    Core(#[from] ks3_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub(crate) fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }

    /// 2 for bad input, 3 for numerical failures inside the library.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(ks3_core::Error::NoConvergence { .. }) => 3,
            CliError::Csv(_) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
