use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    AmbientMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not unimodular (|det| != 1)")]
    NotUnimodular,

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("cannot avoid a piece that fills the whole space")]
    FullPiece,

    #[error("zero vector where a ray direction was expected")]
    ZeroRay,

    #[error("invalid arc: {0}")]
    InvalidArc(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("expected exactly 2 generators, found {0}")]
    GeneratorCount(usize),

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("validation error at {path}: {msg}")]
    Validation { path: String, msg: String },

    #[error("co-rank mismatch: {0}")]
    CorankMismatch(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("degenerate directions make the construction undecidable: {0}")]
    Degenerate(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn validation(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
