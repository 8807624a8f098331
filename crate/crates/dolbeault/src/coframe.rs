//! Atiyah forms in the coframe adapted to the complex structure
//! `phi_can`: `mu = k / 2i`, `dz^i` of type (1,0) and `dzb^i`, `kb` of
//! type (0,1), where `k = j + i du` and `kb = j - i du`.
//!
//! In this coframe the untwisted part of `d_D` kills every coframe
//! element, so `d_D w = d_0 w + j ^ w` with `j = i mu + kb / 2` and `d_0`
//! acting on coefficients by `f -> f_z dz + f_zb dzb + f_u mu + Y(f) kb`,
//! `Y = (i/2) d/du`.

use std::collections::BTreeMap;

use dj_atiyah::AtiyahForm;
use dj_cartan::{sort_sign, Form, Idx};
use dj_scalar::{CPoly, QI};

use crate::error::DolbeaultResult;
use crate::holo::{qconst, HoloChart};

/// Exterior algebra element on a fixed coframe with polynomial
/// coefficients in `(u, z, zb)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct HForm {
    pub nv: usize,
    pub deg: usize,
    pub terms: BTreeMap<Idx, CPoly>,
}

pub(crate) type OneForm = Vec<(usize, QI)>;

impl HForm {
    pub fn zero(nv: usize, deg: usize) -> Self {
        HForm { nv, deg, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mut k: Idx, c: CPoly) {
        let Some(s) = sort_sign(&mut k) else { return };
        let c = if s < 0 { c.neg() } else { c };
        let e = self.terms.entry(k.clone()).or_insert_with(|| CPoly::zero(self.nv));
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        if out.terms.is_empty() {
            out.deg = o.deg;
        }
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &QI) -> Self {
        self.map(|c| c.scale(s))
    }

    pub fn map(&self, f: impl Fn(&CPoly) -> CPoly) -> Self {
        let mut out = HForm::zero(self.nv, self.deg);
        for (k, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(k.clone(), v);
            }
        }
        out
    }

    /// Keep the terms whose index set satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Idx) -> bool) -> Self {
        let mut out = HForm::zero(self.nv, self.deg);
        for (k, c) in &self.terms {
            if keep(k) {
                out.terms.insert(k.clone(), c.clone());
            }
        }
        out
    }

    /// `e ^ self` for a coframe element `e`.
    pub fn left_wedge(&self, e: usize) -> Self {
        let mut out = HForm::zero(self.nv, self.deg + 1);
        for (k, c) in &self.terms {
            let mut nk = Idx::new();
            nk.push(e as u8);
            nk.extend(k.iter().copied());
            out.add_term(nk, c.clone());
        }
        out
    }

    /// `self ^ a` for a constant-coefficient 1-form `a`.
    pub fn right_wedge_one(&self, a: &OneForm) -> Self {
        let mut out = HForm::zero(self.nv, self.deg + 1);
        for (k, c) in &self.terms {
            for (j, v) in a {
                let mut nk = k.clone();
                nk.push(*j as u8);
                out.add_term(nk, c.scale(v));
            }
        }
        out
    }

    /// Re-express in another coframe given the images of the old coframe
    /// elements as constant-coefficient 1-forms.
    pub fn rebase(&self, images: &[OneForm]) -> Self {
        let mut out = HForm::zero(self.nv, self.deg);
        for (k, c) in &self.terms {
            let mut acc = HForm::zero(self.nv, 0);
            acc.terms.insert(Idx::new(), c.clone());
            for &i in k.iter() {
                acc = acc.right_wedge_one(&images[i as usize]);
            }
            out = out.add(&acc);
        }
        out.deg = self.deg;
        out
    }

    /// Split off a coframe element that is the largest index:
    /// `self = a + b ^ e`.
    pub fn split_last(&self, e: usize) -> (Self, Self) {
        let mut a = HForm::zero(self.nv, self.deg);
        let mut b = HForm::zero(self.nv, self.deg.saturating_sub(1));
        for (k, c) in &self.terms {
            if k.last() == Some(&(e as u8)) {
                b.terms.insert(k[..k.len() - 1].iter().copied().collect(), c.clone());
            } else {
                a.terms.insert(k.clone(), c.clone());
            }
        }
        (a, b)
    }
}

/// Coframe indices of the adapted coframe.
impl HoloChart {
    pub(crate) fn mu(&self) -> usize {
        0
    }

    pub(crate) fn dz(&self, i: usize) -> usize {
        1 + i
    }

    pub(crate) fn dzb(&self, i: usize) -> usize {
        1 + self.n() + i
    }

    pub(crate) fn kb(&self) -> usize {
        2 * self.n() + 1
    }

    /// Bidegree `(r, s)` of an adapted basis element.
    pub(crate) fn bidegree(&self, k: &Idx) -> (usize, usize) {
        let r = k.iter().filter(|&&i| (i as usize) <= self.n()).count();
        (r, k.len() - r)
    }

    /// Whether an adapted basis element contains some `dzb`.
    pub(crate) fn has_dzb(&self, k: &Idx) -> bool {
        k.iter().any(|&i| (i as usize) > self.n() && (i as usize) <= 2 * self.n())
    }

    /// Images of `(du, dx.., dy.., j)` in the adapted coframe.
    fn real_to_adapted(&self) -> Vec<OneForm> {
        let n = self.n();
        let mut out = vec![vec![(self.mu(), qconst((1, 1), (0, 1))), (self.kb(), qconst((0, 1), (1, 2)))]];
        for i in 0..n {
            out.push(vec![(self.dz(i), qconst((1, 2), (0, 1))), (self.dzb(i), qconst((1, 2), (0, 1)))]);
        }
        for i in 0..n {
            out.push(vec![(self.dz(i), qconst((0, 1), (-1, 2))), (self.dzb(i), qconst((0, 1), (1, 2)))]);
        }
        out.push(vec![(self.mu(), qconst((0, 1), (1, 1))), (self.kb(), qconst((1, 2), (0, 1)))]);
        out
    }

    /// Images of `(mu, dz.., dzb.., kb)` in `(du, dx.., dy.., j)`.
    fn adapted_to_real(&self) -> Vec<OneForm> {
        let n = self.n();
        let j = 2 * n + 1;
        let mut out = vec![vec![(0, qconst((1, 2), (0, 1))), (j, qconst((0, 1), (-1, 2)))]];
        for i in 0..n {
            out.push(vec![(1 + i, qconst((1, 1), (0, 1))), (1 + n + i, qconst((0, 1), (1, 1)))]);
        }
        for i in 0..n {
            out.push(vec![(1 + i, qconst((1, 1), (0, 1))), (1 + n + i, qconst((0, 1), (-1, 1)))]);
        }
        out.push(vec![(j, qconst((1, 1), (0, 1))), (0, qconst((0, 1), (-1, 1)))]);
        out
    }

    /// Coefficient-wise holomorphic representation of an ordinary form,
    /// keeping the real coframe `(du, dx.., dy..)`.
    fn form_terms(&self, w: &Form, extra: Option<usize>) -> DolbeaultResult<HForm> {
        let deg = w.deg() + extra.map_or(0, |_| 1);
        let mut out = HForm::zero(self.nvars(), deg);
        for (k, c) in w.terms() {
            let mut k = k.clone();
            if let Some(e) = extra {
                k.push(e as u8);
            }
            out.add_term(k, self.to_z(c)?);
        }
        Ok(out)
    }

    pub(crate) fn to_adapted(&self, w: &AtiyahForm) -> DolbeaultResult<HForm> {
        self.ensure_on(w.chart())?;
        let raw = self.form_terms(&w.w0, None)?.add(&self.form_terms(&w.w1, Some(2 * self.n() + 1))?);
        let mut out = raw.rebase(&self.real_to_adapted());
        out.deg = w.deg();
        Ok(out)
    }

    pub(crate) fn from_adapted(&self, h: &HForm) -> AtiyahForm {
        let raw = h.rebase(&self.adapted_to_real());
        let j = 2 * self.n() + 1;
        let (a, b) = raw.split_last(j);
        let to_form = |f: &HForm, deg: usize| -> Form {
            Form::from_terms(
                &self.chart().clone(),
                deg,
                f.terms.iter().map(|(k, c)| (k.iter().map(|&i| i as usize).collect::<Vec<_>>(), self.from_z(c))),
            )
        };
        AtiyahForm::new(h.deg, to_form(&a, h.deg), to_form(&b, h.deg.saturating_sub(1)))
            .expect("components have matching degrees")
    }

    /// Ordinary form in the coframe `(du, dz.., dzb..)`; `du` occupies the
    /// slot of `mu`.
    pub(crate) fn to_complex_coframe(&self, w: &Form) -> DolbeaultResult<HForm> {
        self.ensure_on(w.chart())?;
        let mut images = self.real_to_adapted();
        images.truncate(2 * self.n() + 1);
        images[0] = vec![(self.mu(), qconst((1, 1), (0, 1)))];
        let mut out = self.form_terms(w, None)?.rebase(&images);
        out.deg = w.deg();
        Ok(out)
    }

    pub(crate) fn from_complex_coframe(&self, h: &HForm) -> Form {
        let mut images = self.adapted_to_real();
        images.truncate(2 * self.n() + 1);
        images[0] = vec![(0, qconst((1, 1), (0, 1)))];
        let raw = h.rebase(&images);
        Form::from_terms(
            &self.chart().clone(),
            h.deg,
            raw.terms.iter().map(|(k, c)| (k.iter().map(|&i| i as usize).collect::<Vec<_>>(), self.from_z(c))),
        )
    }

    /// Apply `Y = (i/2) d/du` to every coefficient.
    pub(crate) fn apply_y(&self, h: &HForm) -> HForm {
        h.map(|c| c.derivative(self.u_var()).scale(&qconst((0, 1), (1, 2))))
    }

    /// Standard Dolbeault operator `sum_i dzb^i ^ d/dzb^i` on coefficients.
    pub(crate) fn dbar_plain(&self, h: &HForm) -> HForm {
        let mut out = HForm::zero(h.nv, h.deg + 1);
        for i in 0..self.n() {
            let v = self.zb_var(i);
            out = out.add(&h.map(|c| c.derivative(v)).left_wedge(self.dzb(i)));
        }
        out.deg = h.deg + 1;
        out
    }

    /// `dbar_D = dbar_0 + kb/2 ^ -`, with `dbar_0 f = f_zb dzb + Y(f) kb`.
    pub(crate) fn dbar_d_adapted(&self, h: &HForm) -> HForm {
        let half = qconst((1, 2), (0, 1));
        let mut out = self.dbar_plain(h);
        out = out.add(&self.apply_y(h).add(&h.scale(&half)).left_wedge(self.kb()));
        out.deg = h.deg + 1;
        out
    }

    /// `d_D - dbar_D = del_0 + i mu ^ -`, with
    /// `del_0 f = f_z dz + f_u mu`.
    pub(crate) fn partial_d_adapted(&self, h: &HForm) -> HForm {
        let i_unit = qconst((0, 1), (1, 1));
        let mut out = HForm::zero(h.nv, h.deg + 1);
        for i in 0..self.n() {
            let v = self.z_var(i);
            out = out.add(&h.map(|c| c.derivative(v)).left_wedge(self.dz(i)));
        }
        out = out.add(&h.map(|c| c.derivative(self.u_var())).add(&h.scale(&i_unit)).left_wedge(self.mu()));
        out.deg = h.deg + 1;
        out
    }

    pub(crate) fn render_adapted(&self, h: &HForm) -> String {
        if h.terms.is_empty() {
            return "0".into();
        }
        let n = self.n();
        let name = |i: usize| -> String {
            let suffix = |j: usize| if n == 1 { String::new() } else { (j + 1).to_string() };
            if i == 0 {
                "mu".into()
            } else if i <= n {
                format!("dz{}", suffix(i - 1))
            } else if i <= 2 * n {
                format!("dzb{}", suffix(i - 1 - n))
            } else {
                "kb".into()
            }
        };
        let parts: Vec<String> = h
            .terms
            .iter()
            .map(|(k, c)| {
                let b: Vec<String> = k.iter().map(|&i| name(i as usize)).collect();
                let coeff = self.render_z(c);
                if b.is_empty() {
                    coeff
                } else if c.is_one() {
                    b.join("^")
                } else {
                    format!("({coeff})*{}", b.join("^"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

pub(crate) fn rational(n: i64, d: i64) -> QI {
    qconst((n, d), (0, 1))
}
