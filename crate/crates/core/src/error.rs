use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: vertex {index} out of range 1..={n}")]
    VertexOutOfRange { line: usize, index: usize, n: usize },
    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
    #[error("line {line}: clause has {count} literals, expected exactly 3")]
    ClauseWidth { line: usize, count: usize },
    #[error("brute force refuses {n} vertices (cap {cap})")]
    TooLarge { n: usize, cap: usize },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
