use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("self-loop at node {node}")]
    SelfLoop { node: usize },
    #[error("edge ({u}, {v}) has non-positive weight {weight}")]
    NonPositiveWeight { u: usize, v: usize, weight: Rational },
    #[error("node id {node} out of range for a graph on {n} nodes")]
    IdOutOfRange { node: usize, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("stretch parameter must be at least 1, got {0}")]
    InvalidStretch(Rational),
    #[error("subgraph is not an edge-subgraph of the host graph: {0}")]
    NotSubgraph(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is a forest")]
    IsForest,

    #[error("not a simple cycle: {0}")]
    NotACycle(String),
    #[error("edge ({u}, {v}) is missing from the graph")]
    MissingEdge { u: usize, v: usize },
    #[error("instance too large for brute force: {0}")]
    TooLarge(String),

    #[error("invalid spanning-cycle graph: {0}")]
    InvalidCycleGraph(String),
    #[error("reduction precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("not a walk: {0}")]
    NotAWalk(String),
    #[error("safe-path windows for chord ({u}, {v}) overlap; the hiker protocol needs disjoint endpoints")]
    OverlappingWindows { u: usize, v: usize },

    #[error("probability must lie in [0, 1], got {0}")]
    InvalidProbability(Rational),
    #[error("spanner misses its stretch bound: {0}")]
    StretchViolated(String),
    #[error("invalid parameter: {0}")]
    BadParams(String),
}
