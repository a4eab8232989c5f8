use std::path::PathBuf;

use bidir_core::SearchError;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: line {line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("report: {0}")]
    Report(String),
}

impl BenchError {
    /// Process exit code: 1 usage, 2 instance I/O, 3 internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Usage(_) => 1,
            BenchError::Io { .. } | BenchError::Parse { .. } => 2,
            BenchError::Search(SearchError::InvalidInstance(_)) => 2,
            BenchError::Invariant(_) | BenchError::Search(_) | BenchError::Report(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, BenchError>;
