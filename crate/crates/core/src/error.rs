use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {vertex} has invalid weight {weight}")]
    InvalidWeight { vertex: usize, weight: f64 },

    #[error("expected {expected} weights, got {got}")]
    WeightCountMismatch { expected: usize, got: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A heuristic returned a clique smaller than the requested minimum size.
    /// This says nothing about feasibility of the instance.
    #[error("{algorithm} found a clique of size {found}, below the required {required}")]
    MinSizeUnmet {
        algorithm: &'static str,
        found: usize,
        required: usize,
    },

    #[error("instance of size {size} exceeds the exhaustive-search guard of {limit}")]
    GuardExceeded { size: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid scenario: {0}")]
    Scenario(String),

    /// A decoded answer failed its independent constraint check.
    #[error("constraint check failed: {0}")]
    ConstraintViolation(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Infeasible(_) | Error::MinSizeUnmet { .. } => 3,
            Error::GuardExceeded { .. } => 4,
            Error::ConstraintViolation(_) => 5,
            _ => 2,
        }
    }
}
