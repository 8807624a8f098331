//! Multivariate polynomial gcd over a field.
//!
//! The algorithm is the recursive primitive polynomial remainder sequence:
//! view both inputs as univariate in one variable with coefficients in the
//! remaining variables, split off contents recursively, and run a
//! pseudo-division sequence on the primitive parts.

use crate::field::{inv_modp, Field, MODP};
use crate::poly::{MPoly, Monomial};

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(a: &MPoly<F>, b: &MPoly<F>) -> MPoly<F> {
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(n);
    }
    if a.is_monomial() || b.is_monomial() {
        let (m, other) = if a.is_monomial() { (a, b) } else { (b, a) };
        let g = m.terms()[0].0.gcd(&other.monomial_content());
        return MPoly::monomial(g, F::one());
    }
    // Pull out the common monomial factor first; the remaining gcd has no
    // monomial factor.
    let mc = a.monomial_content().gcd(&b.monomial_content());
    let (a, b) = if mc.is_one() {
        (a.clone(), b.clone())
    } else {
        let d = MPoly::monomial(mc.clone(), F::one());
        (a.div_exact(&d).unwrap(), b.div_exact(&d).unwrap())
    };
    let g = gcd_rec(&a, &b);
    if mc.is_one() {
        g
    } else {
        g.mul(&MPoly::monomial(mc, F::one())).monic()
    }
}

fn gcd_rec<F: Field>(a: &MPoly<F>, b: &MPoly<F>) -> MPoly<F> {
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(n);
    }
    if a.is_monomial() || b.is_monomial() {
        let (m, other) = if a.is_monomial() { (a, b) } else { (b, a) };
        let g = m.terms()[0].0.gcd(&other.monomial_content());
        return MPoly::monomial(g, F::one());
    }
    // Cheap divisibility checks catch the frequent case of one argument
    // dividing the other.
    if a.len() >= b.len() && a.total_degree() >= b.total_degree() {
        if a.div_exact(b).is_some() {
            return b.monic();
        }
    } else if b.total_degree() >= a.total_degree() && b.div_exact(a).is_some() {
        return a.monic();
    }
    // Variables occurring in only one argument are removed through contents.
    if let Some(v) = (0..n).find(|&v| a.involves(v) != b.involves(v)) {
        return if a.involves(v) {
            gcd_rec(&content_in(a, v), b)
        } else {
            gcd_rec(a, &content_in(b, v))
        };
    }
    let shared: Vec<usize> = (0..n).filter(|&v| a.involves(v)).collect();
    if shared.is_empty() {
        return MPoly::one(n);
    }
    // Modular images bound the degree of the gcd in each variable. A zero
    // bound means the gcd does not involve that variable at all.
    let mut best: Option<(u16, usize)> = None;
    for &v in &shared {
        let bound = modular_degree_bound(a, b, v);
        if bound == Some(0) {
            return gcd_rec(&content_in(a, v), &content_in(b, v));
        }
        let key = bound.unwrap_or(u16::MAX);
        if best.map(|(k, _)| key < k).unwrap_or(true) {
            best = Some((key, v));
        }
    }
    let (bound, v) = best.expect("at least one shared variable");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_rec(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let (mut p, mut q) = if pa.degree_in(v) >= pb.degree_in(v) { (pa, pb) } else { (pb, pa) };
    if bound == q.degree_in(v) && p.div_exact(&q).is_some() {
        return c.mul(&q).monic();
    }
    // Subresultant remainder sequence: exact divisions keep coefficient
    // growth linear without computing contents at every step.
    let mut g = MPoly::one(n);
    let mut h = MPoly::one(n);
    loop {
        let delta = (p.degree_in(v) - q.degree_in(v)) as u32;
        let r = prem_full(&p, &q, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            // The primitive parts are coprime in v.
            return c.monic();
        }
        let divisor = g.mul(&h.pow(delta));
        p = q;
        q = r.div_exact(&divisor).expect("subresultant division is exact");
        g = p.lc_in(v);
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
    let g = primitive_part(&q, v);
    c.mul(&g).monic()
}

/// Full pseudo-remainder `lc(q)^(deg p - deg q + 1) p mod q` in variable `v`.
fn prem_full<F: Field>(p: &MPoly<F>, q: &MPoly<F>, v: usize) -> MPoly<F> {
    let n = p.nvars();
    let dq = q.degree_in(v);
    let lq = q.lc_in(v);
    let mut steps = (p.degree_in(v) - dq) as u32 + 1;
    let mut r = p.clone();
    while !r.is_zero() && r.degree_in(v) >= dq {
        let dr = r.degree_in(v);
        let lr = r.lc_in(v);
        let mut shift = Monomial::one(n);
        shift.0[v] = dr - dq;
        let t = q.mul(&lr).mul_term(&shift, &F::one());
        r = r.mul(&lq).sub(&t);
        steps -= 1;
    }
    if steps > 0 && !r.is_zero() {
        r = r.mul(&lq.pow(steps));
    }
    r
}

fn mulm(a: u64, b: u64) -> u64 {
    (a as u128 * b as u128 % MODP as u128) as u64
}

fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Degree of the gcd of two univariate polynomials over the prime field.
fn modp_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let inv = inv_modp(*b.last().unwrap());
        while a.len() >= b.len() {
            let f = mulm(*a.last().unwrap(), inv);
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                let t = mulm(f, bc);
                a[shift + i] = (a[shift + i] + MODP - t) % MODP;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn modp_image<F: Field>(a: &MPoly<F>, v: usize, point: &[u64]) -> Option<Vec<u64>> {
    let mut out = vec![0u64; a.degree_in(v) as usize + 1];
    for (m, c) in a.terms() {
        let mut t = c.to_modp()?;
        for (i, &e) in m.0.iter().enumerate() {
            if i != v {
                for _ in 0..e {
                    t = mulm(t, point[i]);
                }
            }
        }
        let k = m.0[v] as usize;
        out[k] = (out[k] + t) % MODP;
    }
    Some(out)
}

/// Upper bound for the degree in `v` of `gcd(a, b)`, from the gcd of
/// images under a substitution of the other variables modulo a prime. The
/// bound is rigorous whenever both leading coefficients survive reduction.
fn modular_degree_bound<F: Field>(a: &MPoly<F>, b: &MPoly<F>, v: usize) -> Option<u16> {
    let n = a.nvars();
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15 ^ (v as u64);
    for _ in 0..4 {
        let point: Vec<u64> = (0..n)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) % MODP
            })
            .collect();
        let (Some(ia), Some(ib)) = (modp_image(a, v, &point), modp_image(b, v, &point)) else {
            continue;
        };
        if ia.last() == Some(&0) || ib.last() == Some(&0) {
            continue;
        }
        return Some(modp_gcd_degree(ia, ib) as u16);
    }
    None
}

/// Gcd of the coefficients of `a` viewed as a polynomial in variable `v`.
pub fn content_in<F: Field>(a: &MPoly<F>, v: usize) -> MPoly<F> {
    let coeffs = a.coeffs_in(v);
    let mut nonzero: Vec<&MPoly<F>> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nonzero.sort_by_key(|c| (c.total_degree(), c.len()));
    let mut g = MPoly::zero(a.nvars());
    for c in nonzero {
        g = gcd_rec(&g, c);
        if g.is_constant() {
            return MPoly::one(a.nvars());
        }
    }
    g
}

fn primitive_part<F: Field>(a: &MPoly<F>, v: usize) -> MPoly<F> {
    let c = content_in(a, v);
    if c.is_constant() {
        a.monic()
    } else {
        a.div_exact(&c).expect("content divides").monic()
    }
}

/// Least common multiple, monic.
pub fn lcm<F: Field>(a: &MPoly<F>, b: &MPoly<F>) -> MPoly<F> {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero(a.nvars());
    }
    let g = gcd(a, b);
    a.div_exact(&g).expect("gcd divides").mul(b).monic()
}
