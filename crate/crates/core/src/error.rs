use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("kernel dimension is {0}, expected 1")]
    KernelDimension(usize),

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("capacity exceeded: {what} needs {needed} but the budget is {budget}")]
    Capacity {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("circuit basis is not exhaustive (support bound {0})")]
    NotExhaustive(usize),

    #[error("singular matrix")]
    Singular,

    #[error("arithmetic overflow in fixed-width elimination")]
    Overflow,

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
