//! Dolbeault-Atiyah bicomplex of the canonical complex structure on the
//! gauge algebroid of the trivial line bundle over `R x C^n`, with an exact
//! polynomial solver for `dbar_D`.

mod coframe;
pub mod complex;
pub mod error;
pub mod holo;
pub mod solve;

pub use complex::{bidegree_project, dbar_d, k_decompose, kbar_decompose, partial_d, render_holomorphic, BigradedForm, KDecomposition, Kappa};
pub use error::{DolbeaultError, DolbeaultResult};
pub use holo::HoloChart;
pub use solve::{dbar, dbar_d_solve, dbar_poly_solve, partial_d_solve};
