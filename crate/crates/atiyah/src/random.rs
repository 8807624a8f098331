//! Seeded generators of derivations, jets and Atiyah forms.

use std::sync::Arc;

use dj_cartan::random::{alt, vector, Shape};
use dj_cartan::Form;
use dj_scalar::Chart;
use rand::Rng;

use crate::derivation::{Derivation, Jet};
use crate::form::AtiyahForm;

pub fn derivation<R: Rng>(rng: &mut R, chart: &Arc<Chart>, shape: Shape) -> Derivation {
    Derivation::new(vector(rng, chart, shape), shape.scalar(rng, chart.dim()))
}

pub fn jet<R: Rng>(rng: &mut R, chart: &Arc<Chart>, shape: Shape) -> Jet {
    let eta: Form = alt(rng, chart, 1, chart.dim(), shape);
    Jet::new(eta, shape.scalar(rng, chart.dim()))
}

/// Random Atiyah `k`-form with a few nonzero components in each part.
pub fn form<R: Rng>(rng: &mut R, chart: &Arc<Chart>, k: usize, comps: usize, shape: Shape) -> AtiyahForm {
    let w0: Form = alt(rng, chart, k, comps, shape);
    let w1: Form = if k == 0 { Form::zero(chart, 0) } else { alt(rng, chart, k - 1, comps, shape) };
    AtiyahForm::new(k, w0, w1).expect("components have matching degrees")
}
