use std::sync::Arc;

use dj_scalar::{CScalar, Chart};

use crate::alt::Form;
use crate::vector::{one_form, one_form_comps, VectorField};

/// Endomorphism of the tangent bundle: `(Phi X)^i = sum_j m[i][j] X^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endo11 {
    chart: Arc<Chart>,
    m: Vec<Vec<CScalar>>,
}

impl Endo11 {
    pub fn new(chart: &Arc<Chart>, m: Vec<Vec<CScalar>>) -> Self {
        let n = chart.dim();
        assert!(m.len() == n && m.iter().all(|r| r.len() == n), "matrix must be square of chart dimension");
        Endo11 { chart: chart.clone(), m }
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        let n = chart.dim();
        Endo11 { chart: chart.clone(), m: vec![vec![CScalar::zero(n); n]; n] }
    }

    pub fn identity(chart: &Arc<Chart>) -> Self {
        let mut e = Self::zero(chart);
        for i in 0..chart.dim() {
            e.m[i][i] = CScalar::one(chart.dim());
        }
        e
    }

    /// `alpha (x) X`, the endomorphism `Y -> alpha(Y) X`.
    pub fn tensor(alpha: &Form, x: &VectorField) -> Self {
        let a = one_form_comps(alpha);
        let chart = x.chart();
        let n = chart.dim();
        let m = (0..n).map(|i| (0..n).map(|j| x.comp(i) * &a[j]).collect()).collect();
        Endo11 { chart: chart.clone(), m }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn matrix(&self) -> &[Vec<CScalar>] {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &CScalar {
        &self.m[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|r| r.iter().all(|c| c.is_zero()))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert!(self.chart == o.chart, "chart mismatch");
        let m = self.m.iter().zip(&o.m).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        Endo11 { chart: self.chart.clone(), m }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&CScalar::int(self.chart.dim(), -1)))
    }

    pub fn scale(&self, s: &CScalar) -> Self {
        let m = self.m.iter().map(|r| r.iter().map(|x| x * s).collect()).collect();
        Endo11 { chart: self.chart.clone(), m }
    }

    pub fn apply(&self, x: &VectorField) -> VectorField {
        assert!(self.chart == *x.chart(), "chart mismatch");
        let n = self.chart.dim();
        let comps = (0..n)
            .map(|i| {
                let mut acc = CScalar::zero(n);
                for j in 0..n {
                    if !self.m[i][j].is_zero() && !x.comp(j).is_zero() {
                        acc = &acc + &(&self.m[i][j] * x.comp(j));
                    }
                }
                acc
            })
            .collect();
        VectorField::new(&self.chart, comps)
    }

    /// Dual action on one-forms: `(Phi^* eta)(X) = eta(Phi X)`.
    pub fn dual_apply(&self, eta: &Form) -> Form {
        let e = one_form_comps(eta);
        let n = self.chart.dim();
        let comps: Vec<CScalar> = (0..n)
            .map(|j| {
                let mut acc = CScalar::zero(n);
                for i in 0..n {
                    if !e[i].is_zero() && !self.m[i][j].is_zero() {
                        acc = &acc + &(&e[i] * &self.m[i][j]);
                    }
                }
                acc
            })
            .collect();
        one_form(&self.chart, &comps)
    }

    /// Composition `self o o`.
    pub fn compose(&self, o: &Self) -> Self {
        assert!(self.chart == o.chart, "chart mismatch");
        let n = self.chart.dim();
        Endo11 { chart: self.chart.clone(), m: dj_scalar::linalg::matmul(&self.m, &o.m, n) }
    }

    /// Lie derivative: `(L_X Phi)(Y) = [X, Phi Y] - Phi [X, Y]`.
    pub fn lie(&self, x: &VectorField) -> Self {
        let n = self.chart.dim();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let e = VectorField::basis(&self.chart, j);
            let col = x.bracket(&self.apply(&e)).sub(&self.apply(&x.bracket(&e)));
            cols.push(col);
        }
        let m = (0..n).map(|i| (0..n).map(|j| cols[j].comp(i).clone()).collect()).collect();
        Endo11 { chart: self.chart.clone(), m }
    }

    /// Nijenhuis torsion on a pair of vector fields.
    pub fn nijenhuis_on(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let px = self.apply(x);
        let py = self.apply(y);
        let t1 = px.bracket(&py);
        let t2 = self.apply(&px.bracket(y));
        let t3 = self.apply(&x.bracket(&py));
        let t4 = self.apply(&self.apply(&x.bracket(y)));
        t1.sub(&t2).sub(&t3).add(&t4)
    }

    /// Nijenhuis torsion on all coordinate pairs `i < j`.
    pub fn nijenhuis(&self) -> Nijenhuis {
        let n = self.chart.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let v = self.nijenhuis_on(&VectorField::basis(&self.chart, i), &VectorField::basis(&self.chart, j));
                entries.push((i, j, v));
            }
        }
        Nijenhuis { entries }
    }

    pub fn render(&self) -> String {
        let names = self.chart.names();
        let mut parts = Vec::new();
        for (i, row) in self.m.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let b = format!("d{}*d/d{}", names[j], names[i]);
                parts.push(if c.is_one() { b } else { format!("({})*{}", c.render(names), b) });
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Values `N(d/dx^i, d/dx^j)` for `i < j`.
#[derive(Clone, Debug)]
pub struct Nijenhuis {
    pub entries: Vec<(usize, usize, VectorField)>,
}

impl Nijenhuis {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|(_, _, v)| v.is_zero())
    }

    pub fn first_nonzero(&self) -> Option<&(usize, usize, VectorField)> {
        self.entries.iter().find(|(_, _, v)| !v.is_zero())
    }
}
