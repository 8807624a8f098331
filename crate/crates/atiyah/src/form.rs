use std::sync::Arc;

use dj_cartan::{d, df, ensure_same_chart, interior, lie_form, Form, GeomError, GeomResult};
use dj_scalar::{CScalar, Chart};

use crate::derivation::{Derivation, Jet};

/// Atiyah form `w0 + w1 ^ j` of degree `deg`, with `j` treated as an odd
/// generator placed after all coordinate differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtiyahForm {
    deg: usize,
    pub w0: Form,
    pub w1: Form,
}

fn sign(k: usize) -> bool {
    k % 2 == 1
}

impl AtiyahForm {
    /// Build from the two components; `w1` must have degree `w0.deg() - 1`
    /// (for `deg == 0` pass a zero 0-form).
    pub fn new(deg: usize, w0: Form, w1: Form) -> GeomResult<Self> {
        ensure_same_chart(w0.chart(), w1.chart())?;
        let ok0 = w0.deg() == deg || w0.is_zero();
        let ok1 = if deg == 0 { w1.is_zero() } else { w1.deg() == deg - 1 || w1.is_zero() };
        if !ok0 || !ok1 {
            return Err(GeomError::DegreeMismatch(format!(
                "Atiyah {deg}-form needs components of degree {deg} and {}",
                deg.saturating_sub(1)
            )));
        }
        let chart = w0.chart().clone();
        Ok(AtiyahForm {
            deg,
            w0: if w0.is_zero() { Form::zero(&chart, deg) } else { w0 },
            w1: if w1.is_zero() { Form::zero(&chart, deg.saturating_sub(1)) } else { w1 },
        })
    }

    pub fn zero(chart: &Arc<Chart>, deg: usize) -> Self {
        AtiyahForm { deg, w0: Form::zero(chart, deg), w1: Form::zero(chart, deg.saturating_sub(1)) }
    }

    pub fn scalar(chart: &Arc<Chart>, f: CScalar) -> Self {
        AtiyahForm { deg: 0, w0: Form::scalar(chart, f), w1: Form::zero(chart, 0) }
    }

    /// Embedding of an ordinary form `a -> (a, 0)`.
    pub fn embed(a: &Form) -> Self {
        AtiyahForm { deg: a.deg(), w0: a.clone(), w1: Form::zero(a.chart(), a.deg().saturating_sub(1)) }
    }

    /// The Atiyah 1-form `j = d_D(1)`.
    pub fn j(chart: &Arc<Chart>) -> Self {
        Self::from_jet(&Jet::j(chart))
    }

    pub fn from_jet(psi: &Jet) -> Self {
        AtiyahForm { deg: 1, w0: psi.eta.clone(), w1: Form::scalar(psi.chart(), psi.g.clone()) }
    }

    /// Degree-one Atiyah forms are exactly jets.
    pub fn to_jet(&self) -> GeomResult<Jet> {
        if self.deg != 1 {
            return Err(GeomError::DegreeMismatch(format!("expected an Atiyah 1-form, got degree {}", self.deg)));
        }
        Ok(Jet::new(self.w0.clone(), self.w1.scalar_part()))
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.w0.chart()
    }

    pub fn dim(&self) -> usize {
        self.w0.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.w0.is_zero() && self.w1.is_zero()
    }

    pub fn scalar_part(&self) -> CScalar {
        self.w0.scalar_part()
    }

    fn check(&self, o: &Self) {
        assert!(self.chart() == o.chart(), "chart mismatch in Atiyah form operation");
        assert_eq!(self.deg, o.deg, "degree mismatch in Atiyah form operation");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        AtiyahForm { deg: self.deg, w0: self.w0.add(&o.w0), w1: self.w1.add(&o.w1) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        AtiyahForm { deg: self.deg, w0: self.w0.sub(&o.w0), w1: self.w1.sub(&o.w1) }
    }

    pub fn neg(&self) -> Self {
        AtiyahForm { deg: self.deg, w0: self.w0.neg(), w1: self.w1.neg() }
    }

    pub fn scale(&self, s: &CScalar) -> Self {
        AtiyahForm { deg: self.deg, w0: self.w0.scale(s), w1: self.w1.scale(s) }
    }

    pub fn conj(&self) -> Self {
        AtiyahForm { deg: self.deg, w0: self.w0.conj(), w1: self.w1.conj() }
    }

    /// `(a0 + a1 j) ^ (b0 + b1 j) = a0 ^ b0 + (a0 ^ b1 + (-1)^|b0| a1 ^ b0) ^ j`.
    pub fn wedge(&self, o: &Self) -> Self {
        assert!(self.chart() == o.chart(), "chart mismatch in Atiyah wedge");
        let deg = self.deg + o.deg;
        let w0 = self.w0.wedge(&o.w0);
        let mut w1 = Form::zero(self.chart(), deg.saturating_sub(1));
        if o.deg > 0 {
            w1 = w1.add(&self.w0.wedge(&o.w1));
        }
        if self.deg > 0 {
            let t = self.w1.wedge(&o.w0);
            w1 = w1.add(&if sign(o.deg) { t.neg() } else { t });
        }
        AtiyahForm { deg, w0, w1 }
    }

    /// `d_D w = d w0 + (d w1 + (-1)^|w0| w0) ^ j`.
    pub fn d(&self) -> Self {
        let dw1 = if self.deg == 0 { Form::zero(self.chart(), 0) } else { d(&self.w1) };
        let w1 = if sign(self.deg) { dw1.sub(&self.w0) } else { dw1.add(&self.w0) };
        AtiyahForm { deg: self.deg + 1, w0: d(&self.w0), w1 }
    }

    /// `i_{X+f} w = i_X w0 + (-1)^|w1| f w1 + (i_X w1) ^ j`.
    pub fn interior(&self, dlt: &Derivation) -> Self {
        assert!(self.chart() == dlt.chart(), "chart mismatch in Atiyah interior product");
        let chart = self.chart().clone();
        if self.deg == 0 {
            return Self::zero(&chart, 0);
        }
        let fw1 = self.w1.scale(&dlt.f);
        let w0 = interior(&dlt.x, &self.w0).add(&if sign(self.deg - 1) { fw1.neg() } else { fw1 });
        let w1 = if self.deg == 1 { Form::zero(&chart, 0) } else { interior(&dlt.x, &self.w1) };
        AtiyahForm { deg: self.deg - 1, w0, w1 }
    }

    /// `L_{X+f} w = L_X w0 + f w0 + w1 ^ df + (L_X w1 + f w1) ^ j`.
    pub fn lie(&self, dlt: &Derivation) -> Self {
        assert!(self.chart() == dlt.chart(), "chart mismatch in Atiyah Lie derivative");
        let chart = self.chart().clone();
        let mut w0 = lie_form(&dlt.x, &self.w0).add(&self.w0.scale(&dlt.f));
        let mut w1 = Form::zero(&chart, self.deg.saturating_sub(1));
        if self.deg > 0 {
            w0 = w0.add(&self.w1.wedge(&df(&dlt.f, &chart)));
            w1 = lie_form(&dlt.x, &self.w1).add(&self.w1.scale(&dlt.f));
        }
        AtiyahForm { deg: self.deg, w0, w1 }
    }

    /// Evaluate on `deg` derivations, contracting in order.
    pub fn eval(&self, args: &[Derivation]) -> GeomResult<CScalar> {
        if args.len() != self.deg {
            return Err(GeomError::DegreeMismatch(format!(
                "Atiyah {}-form evaluated on {} derivations",
                self.deg,
                args.len()
            )));
        }
        let mut cur = self.clone();
        for a in args {
            ensure_same_chart(cur.chart(), a.chart())?;
            cur = cur.interior(a);
        }
        Ok(cur.scalar_part())
    }

    /// Musical map of a 2-form: `Delta -> i_Delta w` as a jet.
    pub fn flat(&self, dlt: &Derivation) -> GeomResult<Jet> {
        if self.deg != 2 {
            return Err(GeomError::DegreeMismatch("flat map needs an Atiyah 2-form".into()));
        }
        ensure_same_chart(self.chart(), dlt.chart())?;
        self.interior(dlt).to_jet()
    }

    /// Matrix of the flat map of a 2-form in the frame `d/dx^i, 1` and
    /// coframe `dx^i, j`: column `b` holds the components of the image of
    /// the `b`-th frame element.
    pub fn flat_matrix(&self) -> GeomResult<Vec<Vec<CScalar>>> {
        let frame = Derivation::frame(self.chart());
        let cols: Vec<Vec<CScalar>> =
            frame.iter().map(|e| self.flat(e).map(|j| j.components())).collect::<GeomResult<_>>()?;
        let m = frame.len();
        Ok((0..m).map(|i| (0..m).map(|b| cols[b][i].clone()).collect()).collect())
    }

    pub fn render(&self) -> String {
        let names = self.chart().names();
        let basis = |i: usize| format!("d{}", names[i]);
        let mut parts = Vec::new();
        if !self.w0.is_zero() {
            parts.push(self.w0.render(basis));
        }
        if !self.w1.is_zero() {
            if self.deg == 1 {
                let g = self.w1.scalar_part();
                parts.push(if g.is_one() { "j".into() } else { format!("({})*j", g.render(names)) });
            } else {
                parts.push(format!("({})^j", self.w1.render(basis)));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub fn atiyah_d(w: &AtiyahForm) -> AtiyahForm {
    w.d()
}

pub fn atiyah_interior(dlt: &Derivation, w: &AtiyahForm) -> GeomResult<AtiyahForm> {
    ensure_same_chart(dlt.chart(), w.chart())?;
    Ok(w.interior(dlt))
}

pub fn atiyah_lie(dlt: &Derivation, w: &AtiyahForm) -> GeomResult<AtiyahForm> {
    ensure_same_chart(dlt.chart(), w.chart())?;
    Ok(w.lie(dlt))
}
