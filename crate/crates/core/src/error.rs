use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatErrorKind {
    Syntax,
    Validation,
}

/// Diagnostic produced by the text parsers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub kind: FormatErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            return f.write_str(&self.message);
        }
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("invalid game graph: {0}")]
    InvalidGraph(String),
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error("invalid lasso: {0}")]
    InvalidLasso(String),
    #[error("missing priorities")]
    MissingPriorities,
    #[error("no cycle reachable")]
    Acyclic,
    #[error("attractor target not forcibly reachable from state {0}")]
    AttractorEscape(String),
    #[error("not a safety automaton")]
    NotSafety,
    #[error("value map is not certified")]
    Uncertified,
    #[error("an epsilon is required: the specification has no finite-memory optimal implementation")]
    EpsilonRequired,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("{0}")]
    Format(FormatError),
}

impl From<FormatError> for Error {
    fn from(e: FormatError) -> Self {
        Error::Format(e)
    }
}
