use thiserror::Error;

/// Errors reported by the calculus.
///
/// Every fallible operation in this crate returns one of these; callers that
/// feed user-supplied data through the library (such as the CLI) map them to
/// stable diagnostic codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("group mismatch: expected {expected}, got {got}")]
    GroupMismatch { expected: String, got: String },

    #[error("vector is not primitive (content must be 1)")]
    NonPrimitiveVector,

    #[error("operation requires a univariate series, got {vars} variables")]
    MultivariateInput { vars: usize },

    #[error("series variable counts differ: {left} vs {right}")]
    VarsMismatch { left: usize, right: usize },

    #[error("class function orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("zeta argument must be an odd integer >= 3, got {j}")]
    InvalidZetaArgument { j: u64 },

    #[error("boundary piece {piece} out of range 1..={pieces}")]
    PieceOutOfRange { piece: usize, pieces: usize },

    #[error("corner data supports at most 16 boundary pieces, got {pieces}")]
    TooManyPieces { pieces: usize },

    #[error("glue incompatibility: {0}")]
    GlueIncompatible(String),

    #[error("no annihilating recurrence within {moments} moments; increase K")]
    InsufficientTruncation { moments: usize },

    #[error("inconsistent series: {0}")]
    InconsistentSeries(String),

    #[error("recovered zero weight at node {0}")]
    ZeroWeight(String),

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
