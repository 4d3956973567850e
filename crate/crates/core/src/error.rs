use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid tensor shape: order {order}, dimension {dim} (need order >= 2, dimension >= 1)")]
    InvalidShape { order: usize, dim: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index tuple {index:?} has arity {found}, tensor order is {expected}")]
    Arity {
        index: Vec<usize>,
        expected: usize,
        found: usize,
    },

    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("index set must be nonempty")]
    EmptyIndexSet,

    #[error("matrix is not diagonal")]
    NotDiagonal,

    #[error("matrix is not a permutation matrix")]
    NotPermutation,

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("multi-index degree {found} does not match required degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("{what} size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("padded length {padded} is smaller than source length {len}")]
    PaddingTooShort { padded: usize, len: usize },

    #[error("vector is not a solution of the tensor complementarity problem")]
    NotATcpSolution,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("Lemke pivoting exceeded {0} iterations")]
    IterationLimit(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Io(String),

    #[error("unknown {kind} '{value}'")]
    Unknown { kind: &'static str, value: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
