use std::collections::BTreeMap;

use dj_atiyah::AtiyahForm;
use dj_cartan::Form;
use dj_scalar::CScalar;

use crate::error::DolbeaultResult;
use crate::holo::HoloChart;

/// Which of the two complex 1-forms `k = j + i du` or `kb = j - i du` a
/// decomposition uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kappa {
    K,
    KBar,
}

impl Kappa {
    /// Sign `e` with `kappa = j + e i du`.
    fn sign(self) -> i64 {
        match self {
            Kappa::K => 1,
            Kappa::KBar => -1,
        }
    }
}

/// `w = omega0 + omega1 ^ kappa` with `omega0`, `omega1` ordinary complex
/// forms in `du, dx, dy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KDecomposition {
    pub kappa: Kappa,
    pub omega0: Form,
    pub omega1: Form,
}

fn du(h: &HoloChart) -> Form {
    Form::basis(h.chart(), &[h.u_var()])
}

fn i_times(w: &Form, sign: i64) -> Form {
    let n = w.chart().dim();
    w.scale(&CScalar::int(n, sign).times_i())
}

/// Decompose along `k = j + i du`: `omega1 ^ k = omega1 ^ j + i omega1 ^ du`.
pub fn k_decompose(h: &HoloChart, w: &AtiyahForm) -> DolbeaultResult<KDecomposition> {
    decompose(h, w, Kappa::K)
}

/// Decompose along `kb = j - i du`.
pub fn kbar_decompose(h: &HoloChart, w: &AtiyahForm) -> DolbeaultResult<KDecomposition> {
    decompose(h, w, Kappa::KBar)
}

fn decompose(h: &HoloChart, w: &AtiyahForm, kappa: Kappa) -> DolbeaultResult<KDecomposition> {
    h.ensure_on(w.chart())?;
    let omega1 = w.w1.clone();
    let omega0 = w.w0.sub(&i_times(&omega1.wedge(&du(h)), kappa.sign()));
    Ok(KDecomposition { kappa, omega0, omega1 })
}

impl KDecomposition {
    /// Inverse of the decomposition.
    pub fn compose(&self, h: &HoloChart) -> DolbeaultResult<AtiyahForm> {
        h.ensure_on(self.omega0.chart())?;
        let w0 = self.omega0.add(&i_times(&self.omega1.wedge(&du(h)), self.kappa.sign()));
        Ok(AtiyahForm::new(self.omega0.deg(), w0, self.omega1.clone())?)
    }
}

/// `dbar_D` of the complex structure `phi_can` (`phi 1 = d/du`,
/// `phi d/dx^i = d/dy^i`).
pub fn dbar_d(h: &HoloChart, w: &AtiyahForm) -> DolbeaultResult<AtiyahForm> {
    let a = h.to_adapted(w)?;
    Ok(h.from_adapted(&h.dbar_d_adapted(&a)))
}

/// `del_D = d_D - dbar_D`, computed from its own closed formula.
pub fn partial_d(h: &HoloChart, w: &AtiyahForm) -> DolbeaultResult<AtiyahForm> {
    let a = h.to_adapted(w)?;
    Ok(h.from_adapted(&h.partial_d_adapted(&a)))
}

/// Component of bidegree `(r, s)` with respect to `D^(1,0) + D^(0,1)`.
pub fn bidegree_project(h: &HoloChart, w: &AtiyahForm, r: usize, s: usize) -> DolbeaultResult<AtiyahForm> {
    let a = h.to_adapted(w)?;
    let part = a.filter(|k| h.bidegree(k) == (r, s));
    Ok(h.from_adapted(&part))
}

/// Complex Atiyah form split into its bidegree components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedForm {
    pub deg: usize,
    pub components: BTreeMap<(usize, usize), AtiyahForm>,
}

impl BigradedForm {
    pub fn decompose(h: &HoloChart, w: &AtiyahForm) -> DolbeaultResult<Self> {
        let a = h.to_adapted(w)?;
        let mut components = BTreeMap::new();
        for r in 0..=w.deg() {
            let part = a.filter(|k| h.bidegree(k) == (r, w.deg() - r));
            if !part.is_zero() {
                components.insert((r, w.deg() - r), h.from_adapted(&part));
            }
        }
        Ok(BigradedForm { deg: w.deg(), components })
    }

    pub fn component(&self, h: &HoloChart, r: usize, s: usize) -> AtiyahForm {
        self.components.get(&(r, s)).cloned().unwrap_or_else(|| AtiyahForm::zero(h.chart(), self.deg))
    }

    pub fn total(&self, h: &HoloChart) -> AtiyahForm {
        self.components.values().fold(AtiyahForm::zero(h.chart(), self.deg), |acc, w| acc.add(w))
    }
}

/// Render in the adapted coframe `mu = k/2i, dz, dzb, kb` with coefficients
/// in `(u, z, zb)`.
pub fn render_holomorphic(h: &HoloChart, w: &AtiyahForm) -> DolbeaultResult<String> {
    Ok(h.render_adapted(&h.to_adapted(w)?))
}
