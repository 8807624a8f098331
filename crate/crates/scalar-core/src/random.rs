//! Seeded generators for randomized checks.

use rand::Rng;

use crate::cscalar::{CScalar, Poly};
use crate::field::Field;
use crate::poly::{MPoly, Monomial};
use crate::Rational;

/// Random polynomial with up to `terms` terms, total degree at most `degree`
/// and small integer coefficients.
pub fn poly<R: Rng>(rng: &mut R, nvars: usize, degree: u32, terms: usize) -> Poly {
    let mut raw = Vec::new();
    for _ in 0..terms {
        let mut e = vec![0u16; nvars];
        let mut budget = rng.gen_range(0..=degree);
        while budget > 0 && nvars > 0 {
            let i = rng.gen_range(0..nvars);
            e[i] += 1;
            budget -= 1;
        }
        let c: i64 = rng.gen_range(-3..=3);
        raw.push((Monomial(e.into_iter().collect()), Rational::from_i64(c)));
    }
    MPoly::from_terms(nvars, raw)
}

/// Random real polynomial scalar.
pub fn real<R: Rng>(rng: &mut R, nvars: usize, degree: u32, terms: usize) -> CScalar {
    CScalar::from_poly(&poly(rng, nvars, degree, terms))
}

/// Random complex polynomial scalar; the imaginary part is present with
/// probability one half.
pub fn complex<R: Rng>(rng: &mut R, nvars: usize, degree: u32, terms: usize) -> CScalar {
    let re = poly(rng, nvars, degree, terms);
    let im = if rng.gen_bool(0.5) { poly(rng, nvars, degree, terms) } else { Poly::zero(nvars) };
    CScalar::new(crate::Scalar::from_poly(re), crate::Scalar::from_poly(im))
}
