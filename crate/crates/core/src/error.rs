use thiserror::Error;

/// Errors raised by the exterior-calculus and reconstruction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grade exceeds dimension: {0} > 4")]
    GradeOverflow(usize),
    #[error("cannot contract scalar")]
    ContractScalar,
    #[error("arity mismatch: form of grade {grade} evaluated on {given} vectors")]
    Arity { grade: usize, given: usize },
    #[error("grade mismatch: expected {expected}, found {found}")]
    GradeMismatch { expected: usize, found: usize },
    #[error("non-timelike boost: beta = {0} must lie in (0, 1)")]
    NonTimelikeBoost(String),
    #[error("degenerate boost: beta = 0")]
    DegenerateBoost,
    #[error("invalid boost axis {0}, expected 1, 2 or 3")]
    InvalidAxis(usize),
    #[error("exact evaluation requested for a jet-backed field")]
    NotExact,
    #[error("degenerate rectangle: {0}")]
    DegenerateRectangle(String),
    #[error("quadrature order must be at least 2, got {0}")]
    QuadratureOrder(usize),
    #[error("singular linear system")]
    Singular,
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("samples must cover frames 0..{0} exactly once")]
    FrameLabels(usize),
    #[error("invalid multi-index: {0}")]
    MultiIndex(String),
    #[error("invalid rational: {0}")]
    Rational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
