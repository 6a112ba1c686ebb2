use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list parse error on line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("operation requires a nonempty graph")]
    EmptyGraph,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph has {n} vertices, above the brute-force cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("coloring is partial: vertex {0} is uncolored")]
    PartialColoring(usize),

    #[error("coloring or list assignment does not match the graph: {0}")]
    Mismatch(String),

    #[error("rule set rejected: {0}")]
    InvalidRuleSet(String),

    #[error("invalid rational {0:?}")]
    Rational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
