//! Exterior derivative, interior products, Lie derivatives and the
//! Schouten-Nijenhuis bracket.

use dj_scalar::CScalar;

use crate::alt::{Form, Idx, Multivector};
use crate::vector::{one_form_comps, VectorField};

/// Exterior derivative.
pub fn d(w: &Form) -> Form {
    let n = w.dim();
    let mut out = Form::zero(w.chart(), w.deg() + 1);
    for (k, c) in w.terms() {
        for i in 0..n {
            if k.contains(&(i as u8)) {
                continue;
            }
            let dc = c.derivative(i);
            if dc.is_zero() {
                continue;
            }
            // dx^i ^ dx^K: position of i in the sorted tuple fixes the sign.
            let pos = k.iter().filter(|&&j| (j as usize) < i).count();
            let mut nk: Idx = k.clone();
            nk.insert(pos, i as u8);
            out.add_term(nk, if pos % 2 == 1 { -&dc } else { dc });
        }
    }
    out
}

/// Differential of a function.
pub fn df(f: &CScalar, chart: &std::sync::Arc<dj_scalar::Chart>) -> Form {
    d(&Form::scalar(chart, f.clone()))
}

/// Interior product `i_X w`, contracting the first slot.
pub fn interior(x: &VectorField, w: &Form) -> Form {
    assert!(x.chart() == w.chart(), "chart mismatch in interior product");
    if w.deg() == 0 {
        return Form::zero(w.chart(), 0);
    }
    w.contract_first(x.comps())
}

/// Evaluate a k-form on k vector fields.
pub fn eval_form(w: &Form, xs: &[VectorField]) -> CScalar {
    assert_eq!(w.deg(), xs.len(), "form degree must equal the number of arguments");
    let mut cur = w.clone();
    for x in xs {
        cur = interior(x, &cur);
    }
    cur.scalar_part()
}

/// Lie derivative of a form, computed in coordinates as a derivation.
pub fn lie_form(x: &VectorField, w: &Form) -> Form {
    assert!(x.chart() == w.chart(), "chart mismatch in Lie derivative");
    let chart = w.chart();
    let mut out = w.map_coeffs(|c| x.apply(c));
    // d(X^i) replaces dx^i in each slot.
    let dx: Vec<Vec<CScalar>> = (0..x.dim())
        .map(|i| one_form_comps(&df(x.comp(i), chart)))
        .collect();
    for (k, c) in w.terms() {
        for r in 0..k.len() {
            let i = k[r] as usize;
            for (j, a) in dx[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut idx: Vec<usize> = k.iter().map(|&t| t as usize).collect();
                idx[r] = j;
                let t = Form::from_terms(chart, w.deg(), [(idx, c * a)]);
                out = out.add(&t);
            }
        }
    }
    out
}

/// Interior product of a one-form into a multivector, first slot:
/// `P(eta, -)`.
pub fn contract(p: &Multivector, eta: &Form) -> Multivector {
    assert!(p.chart() == eta.chart(), "chart mismatch in contraction");
    if p.deg() == 0 {
        return Multivector::zero(p.chart(), 0);
    }
    p.contract_first(&one_form_comps(eta))
}

/// Evaluate a k-vector on k one-forms.
pub fn eval_multivector(p: &Multivector, etas: &[Form]) -> CScalar {
    assert_eq!(p.deg(), etas.len());
    let mut cur = p.clone();
    for e in etas {
        cur = contract(&cur, e);
    }
    cur.scalar_part()
}

/// Natural pairing of a k-vector with a k-form.
pub fn pair(p: &Multivector, w: &Form) -> CScalar {
    assert_eq!(p.deg(), w.deg());
    let n = p.dim();
    let mut acc = CScalar::zero(n);
    for (k, c) in p.terms() {
        if let Some(e) = w.terms().get(k) {
            acc = &acc + &(c * e);
        }
    }
    acc
}

fn theta_derivative(p: &Multivector, i: usize, right: bool) -> Multivector {
    let deg = p.deg().saturating_sub(1);
    let mut out = Multivector::zero(p.chart(), deg);
    for (k, c) in p.terms() {
        if let Some(r) = k.iter().position(|&t| t as usize == i) {
            let moves = if right { k.len() - 1 - r } else { r };
            let rest: Idx = k.iter().enumerate().filter(|&(j, _)| j != r).map(|(_, &t)| t).collect();
            out.add_term(rest, if moves % 2 == 1 { -c } else { c.clone() });
        }
    }
    out
}

/// Schouten-Nijenhuis bracket, extending the Lie bracket of vector fields
/// with `[X, f] = X(f)`.
pub fn schouten(p: &Multivector, q: &Multivector) -> Multivector {
    assert!(p.chart() == q.chart(), "chart mismatch in Schouten bracket");
    let n = p.dim();
    let deg = (p.deg() + q.deg()).saturating_sub(1);
    let mut out = Multivector::zero(p.chart(), deg);
    if p.deg() + q.deg() == 0 {
        return out;
    }
    for i in 0..n {
        let pr = theta_derivative(p, i, true);
        if !pr.is_zero() {
            let dq = q.map_coeffs(|c| c.derivative(i));
            if !dq.is_zero() {
                out = out.add(&pr.wedge(&dq));
            }
        }
        let ql = theta_derivative(q, i, false);
        if !ql.is_zero() {
            let dp = p.map_coeffs(|c| c.derivative(i));
            if !dp.is_zero() {
                out = out.sub(&dp.wedge(&ql));
            }
        }
    }
    out
}

/// Lie derivative of a multivector field along `X`, computed as a
/// derivation using `[X, d/dx^i] = -sum_j d_i(X^j) d/dx^j`.
pub fn lie_multivector(x: &VectorField, p: &Multivector) -> Multivector {
    assert!(x.chart() == p.chart(), "chart mismatch in Lie derivative");
    let chart = p.chart();
    let n = p.dim();
    let mut out = p.map_coeffs(|c| x.apply(c));
    for (k, c) in p.terms() {
        for r in 0..k.len() {
            let i = k[r] as usize;
            for j in 0..n {
                let a = x.comp(j).derivative(i);
                if a.is_zero() {
                    continue;
                }
                let mut idx: Vec<usize> = k.iter().map(|&t| t as usize).collect();
                idx[r] = j;
                out = out.sub(&Multivector::from_terms(chart, p.deg(), [(idx, c * &a)]));
            }
        }
    }
    out
}
