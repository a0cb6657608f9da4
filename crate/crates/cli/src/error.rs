use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported document version {0}")]
    Version(u32),
    #[error("{0}")]
    Semantic(String),
    #[error(transparent)]
    Structure(#[from] frame_canext::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Prefixes a document's errors with the file it came from.
    pub fn in_file(self, path: &str) -> CliError {
        match self {
            CliError::Io { .. } => self,
            other => CliError::Semantic(format!("{path}: {other}")),
        }
    }
}
