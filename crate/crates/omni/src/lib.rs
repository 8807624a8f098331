//! The omni-Lie algebroid `DL + J^1 L` of the trivial line bundle: pairing,
//! Dorfman bracket, B-field transformations and Dirac-Jacobi frames with
//! their checkers and products.

pub mod error;
pub mod frame;
pub mod ops;
pub mod section;

pub use error::{OmniError, OmniResult};
pub use frame::{frame_equal, Frame};
pub use ops::{
    backward_embedding, backward_projection, check_involutive, check_isotropic, flat_product, graph_atiyah,
    graph_jacobi, jacobi_sharp, pull_back, star, varpi,
};
pub use section::{bfield, dorfman, omni_pair, OmniSection};
