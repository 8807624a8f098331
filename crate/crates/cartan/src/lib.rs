//! Cartan calculus on a coordinate chart with exact coefficients.

pub mod alt;
pub mod calculus;
pub mod endo;
pub mod error;
pub mod random;
pub mod report;
pub mod vector;

pub use alt::{ensure_same_chart, sort_sign, Alt, Co, Contra, Form, Idx, Multivector};
pub use calculus::{contract, d, df, eval_form, eval_multivector, interior, lie_form, lie_multivector, pair, schouten};
pub use endo::{Endo11, Nijenhuis};
pub use error::{GeomError, GeomResult};
pub use report::{Check, Report};
pub use vector::{one_form, one_form_comps, VectorField};
