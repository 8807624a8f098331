use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by the zero function")]
    DivisionByZeroFunction,
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("a denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("linear system is inconsistent")]
    InconsistentSystem,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
}
