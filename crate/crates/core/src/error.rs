//! Error types shared across the crate.

use thiserror::Error;

/// Errors from graph construction, parsing, and the capped exact routines.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("{op}: input has {n} vertices, exhaustive cap is {cap}")]
    TooLarge { op: &'static str, n: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Errors from game policies (builders and painters).
#[derive(Debug, Error)]
pub enum PolicyError {
    #[error("unknown policy '{0}'")]
    Unknown(String),
    #[error("policy '{policy}': bad parameter {detail}")]
    BadParameter { policy: String, detail: String },
    #[error("policy '{policy}' aborted: {reason}")]
    Aborted { policy: String, reason: String },
}

/// Errors from running or replaying games.
#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Policy(#[from] PolicyError),
    #[error("transcript error: {0}")]
    Transcript(String),
    #[error("replay mismatch at turn {turn}: {detail}")]
    ReplayMismatch { turn: usize, detail: String },
    #[error("vertex budget exhausted: needed vertex {needed}, cap {cap}")]
    VertexBudget { needed: usize, cap: usize },
}

/// Errors from bound evaluators (domain violations, regime flags).
#[derive(Debug, Error)]
pub enum BoundError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("outside the bound's regime: {0}")]
    OutOfRegime(String),
}

/// Errors from the exact (capped) solvers.
#[derive(Debug, Error)]
pub enum SolverError {
    #[error("{op}: {detail} (cap {cap})")]
    CapExceeded { op: &'static str, detail: String, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
