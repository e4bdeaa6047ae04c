use thiserror::Error;

/// Errors reported by solvers, quality measures and file handling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {}", .0.join("; "))]
    InvalidInstance(Vec<String>),

    #[error("unknown item {0}")]
    UnknownItem(String),

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("estimate length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("solution has no clusters")]
    EmptySolution,

    #[error("empty input")]
    EmptyInput,

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("tree does not span the instance")]
    NotSpanning,

    #[error("no items of type {0} available as cluster centers")]
    NoCenters(usize),

    #[error("instance too large for oracle ({size} items, limit {limit})")]
    OracleGuard { size: usize, limit: usize },

    #[error("layer data missing or inconsistent: {0}")]
    LayerData(String),

    #[error("cluster {0} has no crossing edge to the layer above")]
    IsolatedCluster(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
