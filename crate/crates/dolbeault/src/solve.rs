use dj_atiyah::AtiyahForm;
use dj_cartan::Form;
use dj_scalar::CPoly;

use crate::coframe::{rational, HForm};
use crate::error::{DolbeaultError, DolbeaultResult};
use crate::holo::{qconst, HoloChart};

/// Termwise antiderivative in variable `v`.
fn antiderivative(p: &CPoly, v: usize) -> CPoly {
    let nv = p.nvars();
    let mut raw = Vec::new();
    for (m, c) in p.terms() {
        let mut m = m.clone();
        let e = m.0[v] as i64 + 1;
        m.0[v] += 1;
        raw.push((m, c.scale(dj_scalar::q(1, e))));
    }
    CPoly::from_terms(nv, raw)
}

impl HoloChart {
    /// Standard polynomial Dolbeault primitive. Processes the `zb`
    /// variables from the last to the first: the part containing `dzb^j`
    /// is antidifferentiated in `zb^j` and its `dbar` subtracted.
    pub(crate) fn dbar_poly_solve_adapted(&self, a: &HForm) -> DolbeaultResult<HForm> {
        if a.deg == 0 && !a.is_zero() {
            return Err(DolbeaultError::InvalidDegree("a nonzero function has no dbar-primitive".into()));
        }
        if !self.dbar_plain(a).is_zero() {
            return Err(DolbeaultError::NotClosed(self.render_adapted(a)));
        }
        if a.terms.keys().any(|k| !self.has_dzb(k)) {
            return Err(DolbeaultError::InvalidDegree(format!(
                "terms without dzb are not dbar-exact: {}",
                self.render_adapted(&a.filter(|k| !self.has_dzb(k)))
            )));
        }
        let mut rest = a.clone();
        let mut beta = HForm::zero(a.nv, a.deg.saturating_sub(1));
        for j in (0..self.n()).rev() {
            let e = self.dzb(j) as u8;
            let mut part = HForm::zero(a.nv, a.deg.saturating_sub(1));
            for (k, c) in &rest.terms {
                if let Some(p) = k.iter().position(|&i| i == e) {
                    let reduced = k.iter().copied().filter(|&i| i != e).collect();
                    let c = antiderivative(c, self.zb_var(j));
                    part.add_term(reduced, if p % 2 == 1 { c.neg() } else { c });
                }
            }
            if part.is_zero() {
                continue;
            }
            rest = rest.sub(&self.dbar_plain(&part));
            beta = beta.add(&part);
        }
        debug_assert!(rest.is_zero(), "closed forms with dzb in every term are exhausted");
        beta.deg = a.deg.saturating_sub(1);
        Ok(beta)
    }

    /// Solve `dbar_D rho = w` following the two-stage construction
    /// `rho = rho0 + rho1 ^ kb`.
    pub(crate) fn dbar_d_solve_adapted(&self, w: &HForm) -> DolbeaultResult<HForm> {
        let k = w.deg;
        if k == 0 {
            return Err(DolbeaultError::InvalidDegree("degree-zero forms have no primitive".into()));
        }
        if !self.dbar_d_adapted(w).is_zero() {
            return Err(DolbeaultError::NotClosed(self.render_adapted(w)));
        }
        let (alpha, beta) = w.split_last(self.kb());
        let mut rho0 = if alpha.is_zero() { HForm::zero(w.nv, k - 1) } else { self.dbar_poly_solve_adapted(&alpha)? };
        rho0.deg = k - 1;
        // (-1)^{|rho0|} (rho0 / 2 + Y rho0)
        let sign = if (k - 1) % 2 == 1 { rational(-1, 1) } else { rational(1, 1) };
        let twist = |r: &HForm| self.apply_y(r).add(&r.scale(&rational(1, 2))).scale(&sign);
        let mut gamma = beta.sub(&twist(&rho0));
        gamma.deg = k - 1;
        assert!(self.dbar_plain(&gamma).is_zero(), "second-stage input is dbar-closed");
        // Terms without dzb are holomorphic; absorb them into rho0 through
        // the inverse of (1 + i d/du), a finite series on polynomials.
        let gamma0 = gamma.filter(|key| !self.has_dzb(key));
        if !gamma0.is_zero() {
            let minus_i = qconst((0, 1), (-1, 1));
            let mut term = gamma0.scale(&rational(2, 1)).scale(&sign);
            let mut h = HForm::zero(w.nv, k - 1);
            while !term.is_zero() {
                h = h.add(&term);
                term = term.map(|c| c.derivative(self.u_var()).scale(&minus_i));
            }
            h.deg = k - 1;
            rho0 = rho0.add(&h);
            gamma = gamma.sub(&twist(&h));
        }
        let rho1 = if gamma.is_zero() {
            HForm::zero(w.nv, k.saturating_sub(2))
        } else {
            self.dbar_poly_solve_adapted(&gamma)?
        };
        let mut rho = rho0.add(&rho1.right_wedge_one(&vec![(self.kb(), rational(1, 1))]));
        rho.deg = k - 1;
        Ok(rho)
    }
}

/// Standard Dolbeault operator `sum_i dzb^i ^ d/dzb^i` on ordinary complex
/// forms, with `u` a real parameter.
pub fn dbar(h: &HoloChart, a: &Form) -> DolbeaultResult<Form> {
    let c = h.to_complex_coframe(a)?;
    let mut out = h.dbar_plain(&c);
    out.deg = a.deg() + 1;
    Ok(h.from_complex_coframe(&out))
}

/// Polynomial primitive `b` with `dbar b = a` for a `dbar`-closed form
/// whose terms all contain some `dzb`.
pub fn dbar_poly_solve(h: &HoloChart, a: &Form) -> DolbeaultResult<Form> {
    let c = h.to_complex_coframe(a)?;
    let b = h.dbar_poly_solve_adapted(&c)?;
    Ok(h.from_complex_coframe(&b))
}

/// Primitive `rho` with `dbar_D rho = w` for a `dbar_D`-closed polynomial
/// complex Atiyah form of positive degree.
pub fn dbar_d_solve(h: &HoloChart, w: &AtiyahForm) -> DolbeaultResult<AtiyahForm> {
    let a = h.to_adapted(w)?;
    let rho = h.dbar_d_solve_adapted(&a)?;
    Ok(h.from_adapted(&rho))
}

/// Primitive for `del_D`, obtained by conjugating `dbar_d_solve`.
pub fn partial_d_solve(h: &HoloChart, w: &AtiyahForm) -> DolbeaultResult<AtiyahForm> {
    Ok(dbar_d_solve(h, &w.conj())?.conj())
}
