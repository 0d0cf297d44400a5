use thiserror::Error;

/// Errors raised while building graphs or running the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(u64),
    #[error("vertex {0} has an empty label")]
    EmptyLabel(u64),
    #[error("edge ({0}, {1}) refers to an undeclared vertex")]
    UnknownEndpoint(u64, u64),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u64, u64),
    #[error("edge endpoint {0} is out of range for a graph with {1} vertices")]
    EndpointOutOfRange(usize, usize),
    #[error("graph contains a directed cycle")]
    CyclicGraph,
    #[error("constraint graph must be acyclic")]
    CyclicConstraint,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("oracle enumeration exceeded its bounds ({0})")]
    TooLarge(String),
    #[error("infeasible random graph shape: {0}")]
    InfeasibleShape(String),
}

/// A rejected line of a graph file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;
