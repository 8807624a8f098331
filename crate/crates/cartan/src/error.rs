use dj_scalar::ScalarError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coordinate clash: {0}")]
    CoordinateClash(String),
}

pub type GeomResult<T> = Result<T, GeomError>;
