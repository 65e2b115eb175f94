use std::process::ExitCode;

use kclass_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("comparison is out of scope for m in {{0, inf}}")]
    OutOfScope,
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input or regime, 3 for an internal consistency failure.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Core(
                CoreError::OracleDisagreement(_) | CoreError::NoStabilization { .. },
            ) => ExitCode::from(3),
            _ => ExitCode::from(2),
        }
    }
}
