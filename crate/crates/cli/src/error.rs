use ccurve_core::Error;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{path}: {msg}")]
    Format { path: String, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Format { .. } | CliError::Usage(_) => EXIT_INPUT,
            CliError::Core(Error::Parse(_)) => EXIT_INPUT,
            CliError::Core(_) => EXIT_DEGENERATE,
        }
    }
}
