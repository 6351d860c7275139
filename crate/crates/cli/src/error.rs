use thiserror::Error;

/// Failures of a CLI invocation, each mapped to an exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },

    #[error("{0}")]
    Document(#[from] DocumentError),

    #[error(transparent)]
    Domain(#[from] ifsbound::Error),

    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 for domain errors, 2 for usage and input errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Write { .. } => 1,
            CliError::Usage(_) | CliError::Read { .. } | CliError::Document(_) => 2,
        }
    }
}

/// Problems with an IFS document.
#[derive(Debug, Error)]
pub enum DocumentError {
    /// Carries serde_json's line and column.
    #[error("syntax error: {0}")]
    Syntax(#[from] serde_json::Error),

    #[error("dimension must be 2 or 3, got {0}")]
    Dimension(u64),

    #[error("map {index}: {message}")]
    Map { index: usize, message: String },

    #[error(transparent)]
    Invalid(ifsbound::Error),
}
