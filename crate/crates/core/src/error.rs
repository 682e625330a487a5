use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not idempotent (first difference at row {row}, column {col})")]
    NotIdempotent { row: usize, col: usize },

    #[error("matrix is not invertible: {rows}x{cols} of rank {rank}")]
    NotInvertible { rows: usize, cols: usize, rank: usize },

    #[error("arity mismatch between chain positions {position} and {next}: {left:?} feeds {right:?}", next = position + 1)]
    ArityMismatch { position: usize, left: Vec<usize>, right: Vec<usize> },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("prerequisite axiom failed: {0}")]
    PrerequisiteAxiomFailed(String),

    #[error("factorization failed: {0}")]
    FactorizationFailed(String),

    #[error("Galois map is not invertible (rank {rank} of {rows}x{cols})")]
    GaloisNotInvertible { rows: usize, cols: usize, rank: usize },

    #[error("Hopf verdicts disagree: {0}")]
    EquivalenceViolation(String),

    #[error("round trip failed: {what} (rank {rank}, expected {expected})")]
    RoundTripFailed { what: String, rank: usize, expected: usize },

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("operation table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("operation table has no two-sided unit")]
    NoUnit,

    #[error("schema error at {locator}: {msg}")]
    Schema { locator: String, msg: String },

    #[error("index out of range at {locator}: {index} >= {bound}")]
    IndexOutOfRange { locator: String, index: usize, bound: usize },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
