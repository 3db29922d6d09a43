use ermm_core::Error as CoreError;

pub type CliResult<T> = Result<T, CliError>;

/// Failures surfaced by the command line, each mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn io(e: impl std::fmt::Display) -> Self {
        CliError::Io(e.to_string())
    }

    /// 0 is success; 1 a failed check or internal inconsistency; 2 bad usage; 3 a resource-guard refusal.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::Resource(_)) => 3,
            CliError::Core(CoreError::Usage(_) | CoreError::NotProvided(_)) | CliError::Usage(_) => 2,
            CliError::Core(CoreError::Solver(_) | CoreError::Invariant(_)) | CliError::Verification(_) => 1,
            CliError::Io(_) => 1,
        }
    }
}
