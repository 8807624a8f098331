//! Almost contact quadruples `(Phi, xi, eta, g)` and the complex structures
//! `phi(X, r) = (Phi X - r xi, eta(X) + g r)` they define on `DR_M`.

use std::sync::Arc;

use dj_atiyah::{Derivation, GaugeEndo};
use dj_cartan::{d, df, eval_form, lie_form, one_form, one_form_comps, Endo11, Form, Report, VectorField};
use dj_scalar::{CScalar, Chart};

use crate::show;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcQuadruple {
    pub phi: Endo11,
    pub xi: VectorField,
    pub eta: Form,
    pub g: CScalar,
}

impl AcQuadruple {
    /// Triple `(Phi, xi, eta)`, i.e. a quadruple with `g = 0`.
    pub fn triple(phi: Endo11, xi: VectorField, eta: Form) -> Self {
        let n = xi.dim();
        Self::new(phi, xi, eta, CScalar::zero(n))
    }

    pub fn new(phi: Endo11, xi: VectorField, eta: Form, g: CScalar) -> Self {
        assert!(phi.chart() == xi.chart() && xi.chart() == eta.chart(), "almost contact data on different charts");
        assert!(eta.deg() == 1 || eta.is_zero());
        AcQuadruple { phi, xi, eta, g }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.xi.chart()
    }

    /// Normal form on `(u, x^1, ..., x^n, y^1, ..., y^n)`:
    /// `xi = -d/du`, `eta = -(du + f_y dx - f_x dy)`,
    /// `Phi = dx (x) d/dy - dy (x) d/dx + df (x) d/du`.
    /// With `f = 0` the induced gauge endomorphism is `phi_can`.
    pub fn normal_form(chart: &Arc<Chart>, f: &CScalar) -> Self {
        let dim = chart.dim();
        assert!(dim % 2 == 1, "normal form needs a chart (u, x.., y..)");
        let n = (dim - 1) / 2;
        let mut m = vec![vec![CScalar::zero(dim); dim]; dim];
        let mut eta = vec![CScalar::zero(dim); dim];
        eta[0] = CScalar::int(dim, -1);
        for i in 0..n {
            let (x, y) = (1 + i, 1 + n + i);
            m[y][x] = CScalar::one(dim);
            m[x][y] = CScalar::int(dim, -1);
            eta[x] = -&f.derivative(y);
            eta[y] = f.derivative(x);
        }
        for (j, c) in m[0].iter_mut().enumerate() {
            *c = f.derivative(j);
        }
        Self::triple(Endo11::new(chart, m), VectorField::basis(chart, 0).neg(), one_form(chart, &eta))
    }

    /// Gauge endomorphism `(X, r) -> (Phi X - r xi, eta(X) + g r)`.
    pub fn to_phi(&self) -> GaugeEndo {
        let chart = self.chart().clone();
        let n = chart.dim();
        let eta = one_form_comps(&self.eta);
        let mut images: Vec<Derivation> = (0..n)
            .map(|j| Derivation::new(self.phi.apply(&VectorField::basis(&chart, j)), eta[j].clone()))
            .collect();
        images.push(Derivation::new(self.xi.neg(), self.g.clone()));
        GaugeEndo::from_images(&chart, &images).expect("images live on the chart")
    }

    /// Effect of the line bundle automorphism `r -> e^{-f} r`:
    /// `(Phi + df (x) xi, xi, eta + df o Phi + (xi(f) - g) df, g - xi(f))`.
    pub fn gauge_transform(&self, f: &CScalar) -> Self {
        let chart = self.chart();
        let dfm = df(f, chart);
        let xif = self.xi.apply(f);
        let phi = self.phi.add(&Endo11::tensor(&dfm, &self.xi));
        let eta = self.eta.add(&self.phi.dual_apply(&dfm)).add(&dfm.scale(&(&xif - &self.g)));
        AcQuadruple { phi, xi: self.xi.clone(), eta, g: &self.g - &xif }
    }

    pub fn render(&self) -> String {
        let names = self.chart().names();
        format!(
            "(Phi = {}, xi = {}, eta = {}, g = {})",
            self.phi.render(),
            self.xi.render(),
            show::form(&self.eta),
            self.g.render(names)
        )
    }
}

/// Almost contact identities, then normality `N_Phi + d eta (x) xi = 0` and
/// the three equations it implies.
pub fn check_nacs(t: &AcQuadruple) -> Report {
    let chart = t.chart().clone();
    let n = chart.dim();
    let names = chart.names();
    let mut rep = Report::new();
    rep.record("g = 0", t.g.is_zero(), || format!("g = {}", t.g.render(names)));

    let d1 = t.phi.compose(&t.phi).add(&Endo11::identity(&chart)).sub(&Endo11::tensor(&t.eta, &t.xi));
    rep.record("Phi^2 = -1 + eta (x) xi", d1.is_zero(), || format!("Phi^2 + 1 - eta (x) xi = {}", d1.render()));
    let d2 = t.phi.apply(&t.xi);
    rep.record("Phi xi = 0", d2.is_zero(), || format!("Phi xi = {}", d2.render()));
    let d3 = t.phi.dual_apply(&t.eta);
    rep.record("eta o Phi = 0", d3.is_zero(), || format!("eta o Phi = {}", show::form(&d3)));
    let d4 = &t.xi.pair(&t.eta) - &CScalar::one(n);
    rep.record("eta(xi) = 1", d4.is_zero(), || format!("eta(xi) - 1 = {}", d4.render(names)));

    let deta = d(&t.eta);
    let mut witness = None;
    let mut witness2 = None;
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (VectorField::basis(&chart, i), VectorField::basis(&chart, j));
            let v = t.phi.nijenhuis_on(&a, &b).add(&t.xi.scale(&eval_form(&deta, &[a.clone(), b.clone()])));
            if witness.is_none() && !v.is_zero() {
                witness = Some(format!("(N_Phi + d eta (x) xi)(d/d{}, d/d{}) = {}", names[i], names[j], v.render()));
            }
            let s = &eval_form(&deta, &[t.phi.apply(&a), b.clone()]) + &eval_form(&deta, &[a.clone(), t.phi.apply(&b)]);
            if witness2.is_none() && !s.is_zero() {
                witness2 = Some(format!(
                    "d eta(Phi d/d{a}, d/d{b}) + d eta(d/d{a}, Phi d/d{b}) = {}",
                    s.render(names),
                    a = names[i],
                    b = names[j]
                ));
            }
        }
    }
    rep.record("N_Phi + d eta (x) xi = 0", witness.is_none(), || witness.unwrap_or_default());
    rep.record("d eta(Phi -, -) + d eta(-, Phi -) = 0", witness2.is_none(), || witness2.unwrap_or_default());
    let d5 = t.phi.lie(&t.xi);
    rep.record("L_xi Phi = 0", d5.is_zero(), || format!("L_xi Phi = {}", d5.render()));
    let d6 = lie_form(&t.xi, &t.eta);
    rep.record("L_xi eta = 0", d6.is_zero(), || format!("L_xi eta = {}", show::form(&d6)));
    rep
}
