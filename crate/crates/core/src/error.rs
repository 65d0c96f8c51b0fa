use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for n = {n}")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("edge {{{0}, {1}}} is degenerate (both endpoints equal)")]
    LoopEdge(usize, usize),

    #[error("edge {{{0}, {1}}} is a polygon side but sides are not allowed")]
    SideNotAllowed(usize, usize),

    #[error("edge {{{0}, {1}}} appears more than once")]
    DuplicateEdge(usize, usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
