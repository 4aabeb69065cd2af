use thiserror::Error;

/// Errors produced by graph construction, parsing and the search drivers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph order {0} is outside the supported range 1..=64")]
    UnsupportedOrder(usize),

    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertices {0} and {1} are in different components")]
    Unreachable(usize, usize),

    #[error("distance-{0} graph has no edges")]
    EmptyDistanceGraph(usize),

    #[error("malformed graph6 input at line {line}: {reason}")]
    Graph6 { line: usize, reason: String },

    #[error("{0} exceeds the internal generator envelope: {1}")]
    Envelope(String, String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
