use thiserror::Error;

use crate::coloring::PackingFailure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {0} is outside the supported range 1..=30")]
    InvalidDimension(u32),

    #[error("vector {bits:#x} is not a nonzero vector of F2^{n}")]
    InvalidVector { bits: u32, n: u32 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("the empty set is not a color")]
    EmptySubset,

    #[error("color index {index} is outside 1..={n}")]
    ColorOutOfRange { index: u32, n: u32 },

    #[error("vertex {vertex} out of range for a graph on {num_vertices} vertices")]
    VertexOutOfRange { vertex: usize, num_vertices: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("size mismatch: expected {expected} points, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Packing(#[from] PackingFailure),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    /// Attaches a line number to an error raised while interpreting that line.
    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            Error::Parse { .. } => self,
            other => Error::Parse { line, message: other.to_string() },
        }
    }
}
