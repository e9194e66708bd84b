use thiserror::Error;

/// Errors produced by the field, linear-algebra, coding and scheme layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields (m = {left} vs m = {right})")]
    FieldMismatch { left: u32, right: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("linear system has no solution")]
    NoSolution,

    #[error("linear system has a {dim}-dimensional solution space, expected a unique solution")]
    Ambiguous { dim: usize },

    #[error("decoding failure: {0}")]
    DecodingFailure(&'static str),

    #[error("decryption failure: {0}")]
    DecryptionFailure(String),

    #[error("reduction not applicable: {0}")]
    ReductionInapplicable(String),

    #[error("enumeration of 2^{log2_candidates} candidates exceeds the cap of 2^{log2_cap}")]
    Infeasible { log2_candidates: u64, log2_cap: u32 },

    #[error("malformed encoding: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
