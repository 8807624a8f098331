//! Seeded generators of tensors with random polynomial coefficients.

use std::sync::Arc;

use dj_scalar::{random, CScalar, Chart};
use rand::seq::index::sample;
use rand::Rng;

use crate::alt::{Alt, Variance};
use crate::vector::VectorField;

/// Coefficient style for generated tensors.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub degree: u32,
    pub terms: usize,
    pub complex: bool,
}

impl Shape {
    pub fn real(degree: u32, terms: usize) -> Self {
        Shape { degree, terms, complex: false }
    }

    pub fn scalar<R: Rng>(&self, rng: &mut R, n: usize) -> CScalar {
        if self.complex {
            random::complex(rng, n, self.degree, self.terms)
        } else {
            random::real(rng, n, self.degree, self.terms)
        }
    }
}

/// Random vector field.
pub fn vector<R: Rng>(rng: &mut R, chart: &Arc<Chart>, shape: Shape) -> VectorField {
    let n = chart.dim();
    VectorField::new(chart, (0..n).map(|_| shape.scalar(rng, n)).collect())
}

/// Random alternating tensor of degree `k` with a few nonzero components.
pub fn alt<V: Variance, R: Rng>(rng: &mut R, chart: &Arc<Chart>, k: usize, comps: usize, shape: Shape) -> Alt<V> {
    let n = chart.dim();
    if k > n {
        return Alt::zero(chart, k);
    }
    let mut items = Vec::new();
    for _ in 0..comps {
        let idx = sample(rng, n, k).into_vec();
        items.push((idx, shape.scalar(rng, n)));
    }
    Alt::from_terms(chart, k, items)
}
