use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} is outside the supported range 1..={1}")]
    DimensionOutOfRange(usize, usize),

    #[error("convex subgroup index {j} is invalid for dimension {n}")]
    InvalidSubgroup { j: usize, n: usize },

    #[error("valuation exceeds the available precision")]
    PrecisionIndeterminate,

    #[error("zero input where a nonzero series is required")]
    ZeroInput,

    #[error("series is not a strict unit")]
    NotStrictUnit,

    #[error("element is not in the ring A")]
    NotInRing,

    #[error("element is a unit of the valuation ring")]
    UnitOfValuationRing,

    #[error("modules live over different rings")]
    MixedRings,

    #[error("family violates the compatibility conditions: {0}")]
    FamilyViolation(String),

    #[error("not a positive rational multiple of a square")]
    NotSquare,

    #[error("module is not quadratic")]
    NotQuadratic,

    #[error("unsupported scope: {0}")]
    UnsupportedScope(String),

    #[error("malformed cut: {0}")]
    MalformedCut(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
