use thiserror::Error;

/// Errors raised by the library. Computational failures that carry a
/// diagnostic payload (round restarts, greedy completion, hitting sets) have
/// their own result types; this enum covers invalid input and guards.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("sparsity undefined: maximum degree {0} is below 2")]
    SparsityUndefined(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(String),

    #[error("graph has {n} vertices, above the exact-search limit of {limit}; use a heuristic instead")]
    SizeGuard { n: usize, limit: usize },

    #[error("outcome space has {count} outcomes, above the enumeration limit of {limit}")]
    OutcomeGuard { count: u128, limit: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid correspondence assignment: {0}")]
    InvalidAssignment(String),

    #[error("invalid colouring: {0}")]
    InvalidColouring(String),

    #[error("infeasible schedule: {0}")]
    InfeasibleSchedule(String),

    #[error("graph has no edges")]
    Edgeless,

    #[error("clique reduction failed: {0}")]
    Reduction(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
