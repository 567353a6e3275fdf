use thiserror::Error;

/// Errors produced by graph construction, the exact solvers and the generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid json: {0}")]
    Json(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("{operation}: graph has {n} vertices, limit is {limit}")]
    SizeLimit {
        operation: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("{operation}: graph has no vertices")]
    EmptyGraph { operation: &'static str },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid group: {0}")]
    Group(String),

    #[error("ball exceeds the cap of {cap} vertices")]
    BallCap { cap: usize },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by an instance exceeding a solver or generator limit.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::SizeLimit { .. } | Error::BallCap { .. })
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
