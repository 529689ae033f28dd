use thiserror::Error;

/// Errors raised by the algebra engine.
///
/// Mathematical verdicts (an invalid instance, an obstructed object, a search
/// that found nothing) are reported as data, not through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    ZeroDivision,
    #[error("precision exhausted: {0}; raise the truncation order")]
    PrecisionExhausted(String),
    #[error("not a complex: d∘d ≠ 0 at degree {0}")]
    NotAComplex(i64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("morphism is not closed")]
    NotClosed,
    #[error("wrong degree: expected {expected}, found {found}")]
    WrongDegree { expected: i64, found: i64 },
    #[error("not an idempotent in H⁰: {0}")]
    NotIdempotent(String),
    #[error("search budget of {0} candidates exceeded")]
    BudgetExceeded(usize),
    #[error("object {0} has nonzero deformed obstruction")]
    NotFlat(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("special fibres differ")]
    DifferentFibres,
    #[error("no chain-level identity: {0}")]
    NoIdentity(String),
    #[error("unknown object or label: {0}")]
    Unknown(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
