use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph6: {0}")]
    Graph6(String),

    #[error("edge list: {0}")]
    EdgeList(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("permutation has length {got}, graph has {expected} vertices")]
    PermutationLength { expected: usize, got: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("edge count {m} out of range for {n} vertices (max {max})")]
    EdgeCountOutOfRange { n: usize, m: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no termination within {cap} steps")]
    CapExceeded { cap: usize },

    #[error("vertex count mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("{source} (graph {graph6})")]
    InGraph {
        graph6: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Attach the graph6 record of the graph that produced this error.
    pub fn in_graph(self, graph6: String) -> Self {
        Error::InGraph {
            graph6,
            source: Box::new(self),
        }
    }

    /// True if this error (or the one it wraps) is a step-cap overflow.
    pub fn is_cap_exceeded(&self) -> bool {
        match self {
            Error::CapExceeded { .. } => true,
            Error::InGraph { source, .. } => source.is_cap_exceeded(),
            _ => false,
        }
    }
}
