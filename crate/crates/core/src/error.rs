use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on node {label:?} is not allowed")]
    SelfLoop { line: usize, label: String },

    #[error("empty graph")]
    EmptyGraph,

    #[error("node {node} is out of range for a graph with {n} nodes")]
    InvalidNode { node: NodeId, n: usize },

    #[error("eigenvector centrality undefined: the graph has no edges")]
    EigenvectorUndefined,

    #[error("eigenvector centrality did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("ranking truncation depth l={l} must be smaller than the node count {n}")]
    InvalidTruncation { l: usize, n: usize },

    #[error("degenerate regression: one of the variables has zero variance")]
    DegenerateRegression,

    #[error("non-terminating configuration: outbreak still active after {steps} steps")]
    NonTerminating { steps: usize },

    #[error("empty residual graph: every node is protected")]
    EmptyResidualGraph,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
