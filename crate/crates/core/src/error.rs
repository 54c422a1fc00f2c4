use thiserror::Error;

use crate::matroid::ElementId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("span of dimension {dim} exceeds the enumeration cap of {cap} vectors")]
    DimensionCapExceeded { dim: usize, cap: u64 },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("element {0} is not in the ground set")]
    UnknownElement(ElementId),

    #[error("deletion and contraction sets overlap")]
    OverlappingSets,

    #[error("duplicate element label {0}")]
    DuplicateLabel(ElementId),

    #[error("matrix is not standardizable: {0}")]
    NotStandardizable(String),

    #[error("ground set of {n} elements exceeds the cap of {cap}")]
    GroundSetTooLarge { n: usize, cap: usize },

    #[error("matroid is not simple")]
    NotSimple,

    #[error("matroid is not cosimple")]
    NotCosimple,

    #[error("unknown catalog key {0:?}")]
    UnknownKey(String),

    #[error("unknown minor class {0:?}")]
    UnknownClass(String),

    #[error("unknown certification method {0:?}")]
    UnknownMethod(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("the first {rank} columns do not form an identity matrix")]
    NonStandardForm { rank: usize },

    #[error("lineage does not account for element {0}")]
    LineageIncomplete(ElementId),

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
