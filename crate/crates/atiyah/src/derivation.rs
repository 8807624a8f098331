use std::sync::Arc;

use dj_cartan::{df, ensure_same_chart, one_form, one_form_comps, Form, GeomResult, VectorField};
use dj_scalar::{CScalar, Chart};

/// Derivation `X + f` of the trivial line bundle: a first-order operator
/// `lambda -> X(lambda) + f lambda` with symbol `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub x: VectorField,
    pub f: CScalar,
}

impl Derivation {
    pub fn new(x: VectorField, f: CScalar) -> Self {
        assert_eq!(f.nvars(), x.dim(), "scalar and vector field live on different charts");
        Derivation { x, f }
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        Derivation { x: VectorField::zero(chart), f: CScalar::zero(chart.dim()) }
    }

    /// The identity derivation `1 = (0, 1)`.
    pub fn one(chart: &Arc<Chart>) -> Self {
        Derivation { x: VectorField::zero(chart), f: CScalar::one(chart.dim()) }
    }

    /// Coordinate derivation `d/dx^i`.
    pub fn coordinate(chart: &Arc<Chart>, i: usize) -> Self {
        Derivation { x: VectorField::basis(chart, i), f: CScalar::zero(chart.dim()) }
    }

    /// Standard frame `d/dx^1, ..., d/dx^n, 1`.
    pub fn frame(chart: &Arc<Chart>) -> Vec<Derivation> {
        let mut out: Vec<Derivation> = (0..chart.dim()).map(|i| Self::coordinate(chart, i)).collect();
        out.push(Self::one(chart));
        out
    }

    /// Components in the standard frame.
    pub fn components(&self) -> Vec<CScalar> {
        let mut v = self.x.comps().to_vec();
        v.push(self.f.clone());
        v
    }

    pub fn from_components(chart: &Arc<Chart>, comps: &[CScalar]) -> Self {
        let n = chart.dim();
        assert_eq!(comps.len(), n + 1);
        Derivation { x: VectorField::new(chart, comps[..n].to_vec()), f: comps[n].clone() }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.x.chart()
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    /// Symbol map.
    pub fn symbol(&self) -> &VectorField {
        &self.x
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.f.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Derivation { x: self.x.add(&o.x), f: &self.f + &o.f }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Derivation { x: self.x.sub(&o.x), f: &self.f - &o.f }
    }

    pub fn neg(&self) -> Self {
        Derivation { x: self.x.neg(), f: -&self.f }
    }

    pub fn scale(&self, s: &CScalar) -> Self {
        Derivation { x: self.x.scale(s), f: s * &self.f }
    }

    pub fn conj(&self) -> Self {
        Derivation { x: self.x.conj(), f: self.f.conj() }
    }

    /// Action on a section of the trivial bundle.
    pub fn apply(&self, lambda: &CScalar) -> CScalar {
        &self.x.apply(lambda) + &(&self.f * lambda)
    }

    /// Commutator `[X + f, Y + g] = [X, Y] + X(g) - Y(f)`.
    pub fn bracket(&self, o: &Self) -> Self {
        Derivation { x: self.x.bracket(&o.x), f: &self.x.apply(&o.f) - &o.x.apply(&self.f) }
    }

    pub fn render(&self) -> String {
        let names = self.chart().names();
        let mut parts = Vec::new();
        if !self.x.is_zero() {
            parts.push(self.x.render());
        }
        if !self.f.is_zero() {
            parts.push(if self.f.is_one() { "one".to_string() } else { format!("({})*one", self.f.render(names)) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// First jet `eta + g j`, where `j = j^1(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    pub eta: Form,
    pub g: CScalar,
}

impl Jet {
    pub fn new(eta: Form, g: CScalar) -> Self {
        assert_eq!(eta.deg(), 1, "jet part must be a one-form");
        assert_eq!(g.nvars(), eta.dim(), "scalar and form live on different charts");
        Jet { eta, g }
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        Jet { eta: Form::zero(chart, 1), g: CScalar::zero(chart.dim()) }
    }

    /// The generator `j = j^1(1)`.
    pub fn j(chart: &Arc<Chart>) -> Self {
        Jet { eta: Form::zero(chart, 1), g: CScalar::one(chart.dim()) }
    }

    /// Coordinate differential `dx^i`.
    pub fn coordinate(chart: &Arc<Chart>, i: usize) -> Self {
        Jet { eta: Form::basis(chart, &[i]), g: CScalar::zero(chart.dim()) }
    }

    /// Coframe `dx^1, ..., dx^n, j`, dual to [`Derivation::frame`].
    pub fn coframe(chart: &Arc<Chart>) -> Vec<Jet> {
        let mut out: Vec<Jet> = (0..chart.dim()).map(|i| Self::coordinate(chart, i)).collect();
        out.push(Self::j(chart));
        out
    }

    /// First jet prolongation `j^1 f = df + f j`.
    pub fn prolong(f: &CScalar, chart: &Arc<Chart>) -> Self {
        Jet { eta: df(f, chart), g: f.clone() }
    }

    pub fn components(&self) -> Vec<CScalar> {
        let mut v = one_form_comps(&self.eta);
        v.push(self.g.clone());
        v
    }

    pub fn from_components(chart: &Arc<Chart>, comps: &[CScalar]) -> Self {
        let n = chart.dim();
        assert_eq!(comps.len(), n + 1);
        Jet { eta: one_form(chart, &comps[..n]), g: comps[n].clone() }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.eta.chart()
    }

    pub fn dim(&self) -> usize {
        self.eta.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.eta.is_zero() && self.g.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Jet { eta: self.eta.add(&o.eta), g: &self.g + &o.g }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Jet { eta: self.eta.sub(&o.eta), g: &self.g - &o.g }
    }

    pub fn neg(&self) -> Self {
        Jet { eta: self.eta.neg(), g: -&self.g }
    }

    pub fn scale(&self, s: &CScalar) -> Self {
        Jet { eta: self.eta.scale(s), g: s * &self.g }
    }

    pub fn conj(&self) -> Self {
        Jet { eta: self.eta.conj(), g: self.g.conj() }
    }

    /// Pairing `<eta + g j, X + f> = eta(X) + g f`.
    pub fn pair(&self, d: &Derivation) -> CScalar {
        &d.x.pair(&self.eta) + &(&self.g * &d.f)
    }

    pub fn render(&self) -> String {
        let names = self.chart().names();
        let mut parts = Vec::new();
        if !self.eta.is_zero() {
            parts.push(self.eta.render(|i| format!("d{}", names[i])));
        }
        if !self.g.is_zero() {
            parts.push(if self.g.is_one() { "j".to_string() } else { format!("({})*j", self.g.render(names)) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `X(lambda) + f lambda`.
pub fn deriv_apply(d: &Derivation, lambda: &CScalar) -> GeomResult<CScalar> {
    if lambda.nvars() != d.dim() {
        return Err(dj_cartan::GeomError::ChartMismatch("scalar lives on a chart of different dimension".into()));
    }
    Ok(d.apply(lambda))
}

pub fn deriv_bracket(a: &Derivation, b: &Derivation) -> GeomResult<Derivation> {
    ensure_same_chart(a.chart(), b.chart())?;
    Ok(a.bracket(b))
}

pub fn jet_pair(psi: &Jet, d: &Derivation) -> GeomResult<CScalar> {
    ensure_same_chart(psi.chart(), d.chart())?;
    Ok(psi.pair(d))
}
