//! Exact scalars for symbolic differential geometry.
//!
//! Polynomials and rational functions are generic over a coefficient
//! [`Field`]; the geometric layers use the concrete aliases exported here.

pub mod chart;
pub mod cscalar;
pub mod error;
pub mod field;
pub mod gcd;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod random;

pub use chart::{default_samples, substitute, substitute_polys, Chart, SamplePoint, DEFAULT_SEED};
pub use cscalar::{clear_row, CPoly, CScalar, Poly, Scalar};
pub use error::ScalarError;
pub use field::{q, qi, Field, QI};
pub use gcd::{gcd, lcm};
pub use poly::{MPoly, Monomial};
pub use ratfunc::RatFunc;

/// Rational numbers.
pub type Rational = num_rational::BigRational;
