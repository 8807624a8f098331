use std::sync::Arc;

use dj_atiyah::{AtiyahForm, Derivation, Jet};
use dj_cartan::{ensure_same_chart, GeomResult};
use dj_scalar::{CScalar, Chart};

use crate::error::{OmniError, OmniResult};

/// Section `(Delta, psi)` of `DL + J^1 L`, possibly complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmniSection {
    pub d: Derivation,
    pub psi: Jet,
}

impl OmniSection {
    pub fn new(d: Derivation, psi: Jet) -> Self {
        assert!(d.chart() == psi.chart(), "derivation and jet live on different charts");
        OmniSection { d, psi }
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        OmniSection { d: Derivation::zero(chart), psi: Jet::zero(chart) }
    }

    pub fn derivation(d: Derivation) -> Self {
        let psi = Jet::zero(d.chart());
        OmniSection { d, psi }
    }

    pub fn jet(psi: Jet) -> Self {
        let d = Derivation::zero(psi.chart());
        OmniSection { d, psi }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.d.chart()
    }

    pub fn dim(&self) -> usize {
        self.d.dim()
    }

    /// Components `(X^i, f, eta_i, g)`, length `2 (dim + 1)`.
    pub fn components(&self) -> Vec<CScalar> {
        let mut v = self.d.components();
        v.extend(self.psi.components());
        v
    }

    pub fn from_components(chart: &Arc<Chart>, comps: &[CScalar]) -> Self {
        let r = chart.dim() + 1;
        assert_eq!(comps.len(), 2 * r);
        OmniSection {
            d: Derivation::from_components(chart, &comps[..r]),
            psi: Jet::from_components(chart, &comps[r..]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.d.is_zero() && self.psi.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        OmniSection { d: self.d.add(&o.d), psi: self.psi.add(&o.psi) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        OmniSection { d: self.d.sub(&o.d), psi: self.psi.sub(&o.psi) }
    }

    pub fn neg(&self) -> Self {
        OmniSection { d: self.d.neg(), psi: self.psi.neg() }
    }

    pub fn scale(&self, s: &CScalar) -> Self {
        OmniSection { d: self.d.scale(s), psi: self.psi.scale(s) }
    }

    pub fn conj(&self) -> Self {
        OmniSection { d: self.d.conj(), psi: self.psi.conj() }
    }

    /// Symmetric pairing `<<(D1, p1), (D2, p2)>> = <p1, D2> + <p2, D1>`.
    pub fn pair(&self, o: &Self) -> CScalar {
        &self.psi.pair(&o.d) + &o.psi.pair(&self.d)
    }

    /// Dorfman bracket `([D1, D2], L_{D1} p2 - i_{D2} d_D p1)`.
    pub fn dorfman(&self, o: &Self) -> Self {
        let p1 = AtiyahForm::from_jet(&self.psi);
        let p2 = AtiyahForm::from_jet(&o.psi);
        let jet = p2.lie(&self.d).sub(&p1.d().interior(&o.d));
        OmniSection { d: self.d.bracket(&o.d), psi: jet.to_jet().expect("degree one") }
    }

    /// `e^B (D, psi) = (D, psi + i_D B)` without checking `d_D B = 0`.
    pub fn bfield_unchecked(&self, b: &AtiyahForm) -> Self {
        let shift = b.flat(&self.d).expect("B-field must be an Atiyah 2-form on the same chart");
        OmniSection { d: self.d.clone(), psi: self.psi.add(&shift) }
    }

    pub fn render(&self) -> String {
        format!("({}, {})", self.d.render(), self.psi.render())
    }
}

pub fn omni_pair(a: &OmniSection, b: &OmniSection) -> GeomResult<CScalar> {
    ensure_same_chart(a.chart(), b.chart())?;
    Ok(a.pair(b))
}

pub fn dorfman(a: &OmniSection, b: &OmniSection) -> GeomResult<OmniSection> {
    ensure_same_chart(a.chart(), b.chart())?;
    Ok(a.dorfman(b))
}

/// B-field transformation. Unless `allow_open` is set, `B` must satisfy
/// `d_D B = 0`.
pub fn bfield(b: &AtiyahForm, a: &OmniSection, allow_open: bool) -> OmniResult<OmniSection> {
    ensure_same_chart(b.chart(), a.chart())?;
    if b.deg() != 2 {
        return Err(dj_cartan::GeomError::DegreeMismatch("B-field must be an Atiyah 2-form".into()).into());
    }
    if !allow_open {
        let db = b.d();
        if !db.is_zero() {
            return Err(OmniError::NotClosed(db.render()));
        }
    }
    Ok(a.bfield_unchecked(b))
}
