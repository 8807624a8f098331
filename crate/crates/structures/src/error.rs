use dj_cartan::GeomError;
use dj_omni::OmniError;
use dj_scalar::ScalarError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructError {
    #[error(transparent)]
    Omni(#[from] OmniError),
    #[error("operator is not almost complex: {0}")]
    NotAlmostComplex(String),
    #[error("not a generalized complex structure: {0}")]
    NotGeneralizedComplex(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("unknown structure name '{0}'")]
    UnknownName(String),
    #[error("invalid size {size} for '{name}'")]
    InvalidSize { name: String, size: usize },
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("connection form is not closed: d gamma = {0}")]
    NotFlat(String),
    #[error("inverse form is not closed: d_D omega = {0}")]
    NotClosed(String),
}

impl From<GeomError> for StructError {
    fn from(e: GeomError) -> Self {
        StructError::Omni(OmniError::Geom(e))
    }
}

impl From<ScalarError> for StructError {
    fn from(e: ScalarError) -> Self {
        StructError::Omni(OmniError::Geom(GeomError::Scalar(e)))
    }
}

pub type StructResult<T> = Result<T, StructError>;
