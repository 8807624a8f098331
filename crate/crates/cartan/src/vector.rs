use std::sync::Arc;

use dj_scalar::{CScalar, Chart};

use crate::alt::{Form, Idx, Multivector};

/// Vector field given by its components in the coordinate frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    chart: Arc<Chart>,
    comps: Vec<CScalar>,
}

impl VectorField {
    pub fn new(chart: &Arc<Chart>, comps: Vec<CScalar>) -> Self {
        assert_eq!(comps.len(), chart.dim(), "component count must equal chart dimension");
        VectorField { chart: chart.clone(), comps }
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        let n = chart.dim();
        VectorField { chart: chart.clone(), comps: vec![CScalar::zero(n); n] }
    }

    /// Coordinate vector field `d/dx^i`.
    pub fn basis(chart: &Arc<Chart>, i: usize) -> Self {
        let mut v = Self::zero(chart);
        v.comps[i] = CScalar::one(chart.dim());
        v
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[CScalar] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &CScalar {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    fn check(&self, o: &Self) {
        assert!(self.chart == o.chart, "chart mismatch in vector field operation");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, s: &CScalar) -> Self {
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().map(|a| a * s).collect() }
    }

    pub fn conj(&self) -> Self {
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().map(|a| a.conj()).collect() }
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &CScalar) -> CScalar {
        let n = self.dim();
        let mut acc = CScalar::zero(n);
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let df = f.derivative(i);
            if !df.is_zero() {
                acc = &acc + &(c * &df);
            }
        }
        acc
    }

    /// Lie bracket `[X, Y]`.
    pub fn bracket(&self, o: &Self) -> Self {
        self.check(o);
        let comps = (0..self.dim())
            .map(|j| &self.apply(&o.comps[j]) - &o.apply(&self.comps[j]))
            .collect();
        VectorField { chart: self.chart.clone(), comps }
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut m = Multivector::zero(&self.chart, 1);
        for (i, c) in self.comps.iter().enumerate() {
            let k: Idx = std::iter::once(i as u8).collect();
            m.add_term(k, c.clone());
        }
        m
    }

    pub fn from_multivector(m: &Multivector) -> Self {
        assert_eq!(m.deg(), 1, "expected a degree-one multivector");
        let n = m.dim();
        let comps = (0..n).map(|i| m.coeff(&[i])).collect();
        VectorField { chart: m.chart().clone(), comps }
    }

    /// Pairing with a one-form.
    pub fn pair(&self, eta: &Form) -> CScalar {
        assert_eq!(eta.deg(), 1);
        let n = self.dim();
        let mut acc = CScalar::zero(n);
        for (k, c) in eta.terms() {
            acc = &acc + &(c * &self.comps[k[0] as usize]);
        }
        acc
    }

    pub fn render(&self) -> String {
        self.to_multivector().render(|i| format!("d/d{}", self.chart.names()[i]))
    }
}

/// Components of a one-form.
pub fn one_form_comps(eta: &Form) -> Vec<CScalar> {
    assert_eq!(eta.deg(), 1);
    (0..eta.dim()).map(|i| eta.coeff(&[i])).collect()
}

/// One-form from components.
pub fn one_form(chart: &Arc<Chart>, comps: &[CScalar]) -> Form {
    let mut f = Form::zero(chart, 1);
    for (i, c) in comps.iter().enumerate() {
        let k: Idx = std::iter::once(i as u8).collect();
        f.add_term(k, c.clone());
    }
    f
}
