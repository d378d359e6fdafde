use thiserror::Error;

/// Errors raised by the construction and verification routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("spinor does not represent a real vector (non-Hermitian part {0:e})")]
    NonReal(f64),
    #[error("spinor parameter must be non-zero")]
    ZeroSpinor,
    #[error("not a Killing spinor: residual {0:e}")]
    NotKilling(f64),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("spin mismatch: expected 2s = {expected}, found {found}")]
    SpinMismatch { expected: usize, found: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("wave vector not commensurate with the periodic box: {0}")]
    Incommensurate(String),
    #[error("degenerate family set (rank {rank} < {wanted}); retry with a new seed")]
    Degenerate { rank: usize, wanted: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("serialization: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, Error>;
