use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("invalid level sequence: {0}")]
    LevelSequence(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("problem size {n} exceeds limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error(
        "eigensolver did not converge after {iterations} iterations (last residual {residual:e})"
    )]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("Fiedler value is degenerate (gap {gap:e})")]
    Degenerate { gap: f64 },

    #[error("component anchored at path position {anchor} is not isolated")]
    NotIsolated { anchor: usize },

    #[error("singular system: {0}")]
    Singular(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
