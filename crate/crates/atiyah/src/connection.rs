use std::sync::Arc;

use dj_cartan::{d, Form, VectorField};
use dj_scalar::{CScalar, Chart};

use crate::derivation::Derivation;

/// Connection `nabla_X = X + gamma(X)` on the trivial line bundle, stored by
/// its connection form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    pub gamma: Form,
}

impl Connection {
    pub fn new(gamma: Form) -> Self {
        assert_eq!(gamma.deg(), 1, "connection form must be a one-form");
        Connection { gamma }
    }

    pub fn trivial(chart: &Arc<Chart>) -> Self {
        Connection { gamma: Form::zero(chart, 1) }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.gamma.chart()
    }

    /// Curvature `d gamma`.
    pub fn curvature(&self) -> Form {
        d(&self.gamma)
    }

    pub fn is_flat(&self) -> bool {
        self.curvature().is_zero()
    }

    /// Covariant derivative as a derivation of the bundle.
    pub fn nabla(&self, x: &VectorField) -> Derivation {
        Derivation::new(x.clone(), x.pair(&self.gamma))
    }

    /// Connection differential `d_nabla a = d a + gamma ^ a`.
    pub fn differential(&self, a: &Form) -> Form {
        d(a).add(&self.gamma.wedge(a))
    }

    /// Covariant derivative of a section.
    pub fn covariant(&self, x: &VectorField, s: &CScalar) -> CScalar {
        self.nabla(x).apply(s)
    }
}
