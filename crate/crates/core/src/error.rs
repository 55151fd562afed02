use thiserror::Error;

use crate::graph::Vertex;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("vertex {vertex} has degree {degree}, exceeding the bound {bound}")]
    DegreeBoundExceeded {
        vertex: Vertex,
        degree: usize,
        bound: usize,
    },
    #[error("rooted ball has {size} vertices, over the canonicalization cap {cap}")]
    BallTooLarge { size: usize, cap: usize },
    #[error("graph with {n} vertices is over the exhaustive-search cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("invalid rooted ball: {0}")]
    InvalidBall(&'static str),
    #[error("invalid augmenting path: {0}")]
    InvalidPath(&'static str),
    #[error("invalid matching: {0}")]
    InvalidMatching(&'static str),
    #[error("probe budget exhausted: used {used}, budget {budget}")]
    ProbeBudgetExceeded { used: u64, budget: u64 },
    #[error("distribution radius mismatch: {0} vs {1}")]
    RadiusMismatch(usize, usize),
    #[error("infeasible family spec: {0}")]
    InfeasibleSpec(String),
    #[error("generator retry budget exceeded after {attempts} attempts")]
    RetryBudgetExceeded { attempts: u32 },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
