use thiserror::Error;

/// Failures of a CLI run, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: invalid JSON: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error(transparent)]
    Core(#[from] quantdisk::Error),
    #[error("check {suite} failed: {failed} of {checked} cases")]
    CheckFailed { suite: String, failed: usize, checked: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use quantdisk::Error as E;
        match self {
            CliError::CheckFailed { .. } => 1,
            CliError::Usage(_) | CliError::Io { .. } | CliError::Json { .. } => 2,
            CliError::Core(E::Parse(_) | E::InvalidArgument(_) | E::OutsideUniverse { .. } | E::Unsupported(_)) => 2,
            CliError::Core(_) => 3,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
