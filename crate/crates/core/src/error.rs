use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search exceeded its deadline")]
    Timeout,
    #[error("search generated more than {0} nodes")]
    NodeLimit(u64),
    #[error("structural fault: {0}")]
    Structural(String),
    #[error("empty fringe: {0}")]
    EmptyFringe(&'static str),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

pub type Result<T> = std::result::Result<T, SearchError>;
