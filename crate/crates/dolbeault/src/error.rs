use dj_cartan::GeomError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DolbeaultError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("not a holomorphic chart: {0}")]
    NotHoloChart(String),
    #[error("not polynomial: {0}")]
    NotPolynomial(String),
    #[error("not closed: {0}")]
    NotClosed(String),
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
}

pub type DolbeaultResult<T> = Result<T, DolbeaultError>;
