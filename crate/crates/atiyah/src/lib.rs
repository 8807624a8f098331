//! Calculus of the gauge algebroid of the trivial line bundle: derivations
//! `X + f`, first jets `eta + g j`, Atiyah forms `w0 + w1 ^ j`, flat
//! connections and the homogenization lift.

pub mod connection;
pub mod derivation;
pub mod form;
pub mod gauge;
pub mod homogenize;
pub mod random;

pub use connection::Connection;
pub use derivation::{deriv_apply, deriv_bracket, jet_pair, Derivation, Jet};
pub use form::{atiyah_d, atiyah_interior, atiyah_lie, AtiyahForm};
pub use gauge::{GaugeEndo, GaugeNijenhuis};
pub use homogenize::{homogenize_derivation, homogenize_endo, homogenize_scalar, HOMOGENEOUS_COORDINATE};
