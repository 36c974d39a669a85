use thiserror::Error;

/// Errors produced anywhere in the workbench.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("column order is not a permutation of 0..{0}")]
    InvalidPermutation(usize),

    #[error("matrix has no right inverse (rank {rank} < rows {rows})")]
    NoRightInverse { rank: usize, rows: usize },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("syndrome is not in the image of the check matrix")]
    Unsatisfiable,

    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),

    #[error("generators {0} and {1} anticommute")]
    NotAbelian(usize, usize),

    #[error("generator signs produce -I in the stabilizer group")]
    MinusIdentity,

    #[error("H_X * H_Z^T is nonzero")]
    NotCss,

    #[error("no logical operator of weight <= {0}")]
    DistanceUnknown(usize),

    #[error("boundary composition d_{i} d_{next} is nonzero", i = .0, next = .0 + 1)]
    NotAComplex(usize),

    #[error("state precondition violated: {0}")]
    State(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn shape_err(msg: impl Into<String>) -> Error {
    Error::ShapeMismatch(msg.into())
}
