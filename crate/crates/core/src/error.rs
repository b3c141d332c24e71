use thiserror::Error;

/// Errors raised by parsing, counting and the structural graph operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("edge ({0}, {1}) is not in the graph")]
    NotAnEdge(usize, usize),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("target vertex {target} out of range for target on {k} vertices")]
    TargetOutOfRange { target: usize, k: usize },

    #[error("empty allowed set for vertex {0}")]
    EmptyAllowedSet(usize),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
