//! Named structures on trivial line bundles and their verifiers: Jacobi
//! pairs, homogeneous Poisson and homogeneous generalized complex
//! structures, generalized contact operators, normal almost contact
//! structures, the canonical gallery and the product formulas.

pub mod canonical;
pub mod classify;
pub mod dlcomplex;
pub mod error;
pub mod gencontact;
pub mod homgc;
pub mod jacobi;
pub mod nacs;
pub mod show;
pub mod split;

pub use canonical::{canonical, Structure, GALLERY};
pub use classify::{classify_dj, Classification, DjKind};
pub use dlcomplex::{check_dl_complex, phi_can_on};
pub use error::{StructError, StructResult};
pub use gencontact::{check_gen_contact, eigenframe, GenContactOp};
pub use homgc::{build_l_jz, check_hom_gc, HomGC, TSection};
pub use jacobi::{check_hom_poisson, check_jacobi_pair, HomPoisson, JacobiPair};
pub use nacs::{check_nacs, AcQuadruple};
pub use split::{invert_jacobi, lcs_to_jacobi, split_contact, split_lcs, InverseJacobi};
