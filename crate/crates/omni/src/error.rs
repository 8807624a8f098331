use dj_cartan::GeomError;
use dj_scalar::ScalarError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmniError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("B-field is not closed: d_D B = {0}")]
    NotClosed(String),
    #[error("frame is not maximal isotropic")]
    PreconditionNotMaximalIsotropic,
    #[error("derivation is not in the projection of the frame")]
    NotInProjection,
    #[error("product is not smooth: rank {rank} instead of {expected}{}", at.as_ref().map(|p| format!(" at {p}")).unwrap_or_default())]
    RankDeficient { rank: usize, expected: usize, at: Option<String> },
    #[error("clean intersection fails at {0}")]
    CleanIntersectionFailed(String),
}

impl From<ScalarError> for OmniError {
    fn from(e: ScalarError) -> Self {
        OmniError::Geom(GeomError::Scalar(e))
    }
}

pub type OmniResult<T> = Result<T, OmniError>;
