use std::path::PathBuf;

/// Errors produced by the automaton engine, the objectives, the optimizers and the harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("radius {0} unsupported (expected 1..={max})", max = crate::ca::MAX_RADIUS)]
    InvalidRadius(u32),

    #[error("rule number out of range for radius {radius}")]
    RuleOutOfRange { radius: u32 },

    #[error("lattice width {width} is narrower than the {span}-cell neighborhood")]
    LatticeTooSmall { width: usize, span: usize },

    #[error("lattice width mismatch: expected {expected}, got {actual}")]
    WidthMismatch { expected: usize, actual: usize },

    #[error("density of an even-width lattice ({0}) can be exactly 1/2")]
    EvenWidth(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("objective returned non-finite value {value} at {position:?}")]
    NonFinite { value: f64, position: Vec<f64> },

    #[error("evaluating candidate {index}: {source}")]
    Candidate {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
