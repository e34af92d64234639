use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{}: {source}", path.display())]
    File { path: std::path::PathBuf, source: std::io::Error },

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("number of colors must be at least 1")]
    ZeroColors,

    #[error("coloring covers {coloring} vertices but graph has {graph}")]
    ColoringLengthMismatch { coloring: usize, graph: usize },

    #[error("keep probability {num}/{den} is not in (0, 1]")]
    InvalidProbability { num: u64, den: u64 },

    #[error("brute-force oracle refuses graphs with n = {n} > {limit}")]
    OracleLimit { n: usize, limit: usize },

    #[error("graph has no triangles; sampling is unnecessary")]
    NoTriangles,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("median of an empty list")]
    EmptyMedian,
}

pub type Result<T> = std::result::Result<T, Error>;
