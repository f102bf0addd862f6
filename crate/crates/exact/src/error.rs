use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomials live in different variable sets")]
    VariableMismatch,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}
