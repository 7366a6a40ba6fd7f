use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(#[from] linper_core::Error),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("invalid universe file: {0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    /// 2 for malformed invocations, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Config(_) | CliError::Io(_) => 1,
        }
    }
}
