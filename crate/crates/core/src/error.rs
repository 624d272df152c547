use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("symbol `{0}` is unbound")]
    MissingSymbol(String),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("invalid genus {0}: the model needs g >= 2")]
    InvalidGenus(usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("element outside the {0} submodel")]
    OutsideSubgroup(&'static str),
    #[error("elements do not commute")]
    NotCommuting,
    #[error("not a boundary: {0}")]
    NotABoundary(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("coefficient mismatch: {0}")]
    CoefficientMismatch(String),
    #[error("relations mode mismatch: {0} vs {1}")]
    ModeMismatch(&'static str, &'static str),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
