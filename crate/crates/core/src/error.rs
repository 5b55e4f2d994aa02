use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex count {0} out of range (1..=64)")]
    VertexCount(usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("malformed graph6: {0}")]
    Graph6(String),
    #[error("malformed edge list: {0}")]
    EdgeList(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {0} is unreachable from the path")]
    Unreachable(usize),
    #[error("graph on {n} vertices exceeds the size cap of {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid H parameters: {0}")]
    HParams(String),
    #[error("k = {0} is below 2")]
    KTooSmall(usize),
    #[error("degree-sum hypothesis fails: sigma2 = {sigma2} < n - k = {threshold}")]
    Hypothesis { sigma2: usize, threshold: usize },
    #[error("internal contradiction at {step}: {detail}")]
    Contradiction { step: String, detail: String },
    #[error("search budget exhausted")]
    Budget,
}

pub type Result<T> = std::result::Result<T, Error>;
