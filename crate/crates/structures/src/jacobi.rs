//! Jacobi pairs `(Lambda, E)` and homogeneous Poisson structures `(pi, Z)`.

use std::sync::Arc;

use dj_atiyah::{Derivation, Jet};
use dj_cartan::{contract, df, eval_multivector, lie_multivector, schouten, Multivector, Report, VectorField};
use dj_omni::{graph_jacobi, jacobi_sharp, Frame, OmniSection};
use dj_scalar::{CScalar, Chart};

use crate::show;

/// Bivector `Lambda` and vector field `E`; the Jacobi identities are checked
/// by [`check_jacobi_pair`], not enforced on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiPair {
    pub lambda: Multivector,
    pub e: VectorField,
}

impl JacobiPair {
    pub fn new(lambda: Multivector, e: VectorField) -> Self {
        assert_eq!(lambda.deg(), 2, "Jacobi bivector must have degree two");
        assert!(lambda.chart() == e.chart(), "bivector and vector field on different charts");
        JacobiPair { lambda, e }
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        JacobiPair { lambda: Multivector::zero(chart, 2), e: VectorField::zero(chart) }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.e.chart()
    }

    /// `{f, g} = Lambda(df, dg) + E(f) g - f E(g)`.
    pub fn bracket(&self, f: &CScalar, g: &CScalar) -> CScalar {
        let chart = self.chart();
        let lam = eval_multivector(&self.lambda, &[df(f, chart), df(g, chart)]);
        &(&lam + &(&self.e.apply(f) * g)) - &(f * &self.e.apply(g))
    }

    /// `J#(eta + g j) = (Lambda(eta, -) - g E, eta(E))`.
    pub fn sharp(&self, psi: &Jet) -> Derivation {
        jacobi_sharp(&self.lambda, &self.e, psi)
    }

    /// Matrix of the sharp map: column `b` is the image of the `b`-th
    /// element of the coframe `dx^1, ..., dx^n, j`.
    pub fn sharp_matrix(&self) -> Vec<Vec<CScalar>> {
        let cols: Vec<Vec<CScalar>> = Jet::coframe(self.chart()).iter().map(|p| self.sharp(p).components()).collect();
        let r = cols.len();
        (0..r).map(|i| (0..r).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn graph(&self) -> Frame {
        graph_jacobi(&self.lambda, &self.e)
    }

    pub fn render(&self) -> String {
        format!("({}, {})", show::multivector(&self.lambda), self.e.render())
    }
}

/// Monomials of degree at most `max_deg` in the coordinates of `chart`.
pub fn monomials(chart: &Arc<Chart>, max_deg: u32) -> Vec<CScalar> {
    let n = chart.dim();
    let mut out = vec![CScalar::one(n)];
    let mut layer = vec![(CScalar::one(n), 0usize)];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for (m, start) in &layer {
            for i in *start..n {
                next.push((m * &CScalar::var(n, i), i));
            }
        }
        out.extend(next.iter().map(|(m, _)| m.clone()));
        layer = next;
    }
    out
}

/// First triple of monomials (degree at most two) whose Jacobiator under
/// `bracket` is nonzero.
pub fn jacobiator_witness(
    chart: &Arc<Chart>,
    bracket: impl Fn(&CScalar, &CScalar) -> CScalar,
) -> Option<String> {
    let names = chart.names();
    let mons = monomials(chart, 2);
    let m = mons.len();
    // The Jacobiator of a skew bracket is totally skew, so increasing
    // triples suffice.
    for i in 0..m {
        for j in (i + 1)..m {
            let bij = bracket(&mons[i], &mons[j]);
            for k in (j + 1)..m {
                let a = bracket(&mons[i], &bracket(&mons[j], &mons[k]));
                let b = bracket(&mons[j], &bracket(&mons[k], &mons[i]));
                let c = bracket(&mons[k], &bij);
                let s = &(&a + &b) + &c;
                if !s.is_zero() {
                    return Some(format!(
                        "Jac({}, {}, {}) = {}",
                        mons[i].render(names),
                        mons[j].render(names),
                        mons[k].render(names),
                        s.render(names)
                    ));
                }
            }
        }
    }
    None
}

/// `[Lambda, Lambda] = 2 E ^ Lambda` and `[E, Lambda] = 0`, together with
/// the Jacobi identity of the bracket on low-degree monomials.
pub fn check_jacobi_pair(lambda: &Multivector, e: &VectorField) -> Report {
    let pair = JacobiPair::new(lambda.clone(), e.clone());
    let mut rep = Report::new();
    let two = CScalar::int(e.dim(), 2);
    let d1 = schouten(lambda, lambda).sub(&e.to_multivector().wedge(lambda).scale(&two));
    rep.record("[L, L] = 2 E ^ L", d1.is_zero(), || format!("[L, L] - 2 E ^ L = {}", show::multivector(&d1)));
    let d2 = schouten(&e.to_multivector(), lambda);
    rep.record("[E, L] = 0", d2.is_zero(), || format!("[E, L] = {}", show::multivector(&d2)));
    let w = jacobiator_witness(pair.chart(), |f, g| pair.bracket(f, g));
    rep.record("Jacobi identity on monomials", w.is_none(), || w.unwrap_or_default());
    rep
}

/// Poisson bivector `pi` with homogeneity vector field `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoisson {
    pub pi: Multivector,
    pub z: VectorField,
}

impl HomPoisson {
    pub fn new(pi: Multivector, z: VectorField) -> Self {
        assert_eq!(pi.deg(), 2, "Poisson bivector must have degree two");
        assert!(pi.chart() == z.chart(), "bivector and vector field on different charts");
        HomPoisson { pi, z }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.z.chart()
    }

    /// The real Dirac-Jacobi structure
    /// `<(1 - Z, 0), (pi#eta, eta + eta(Z) j)>`.
    pub fn dirac_jacobi(&self) -> Frame {
        let chart = self.chart().clone();
        let n = chart.dim();
        let mut gens = vec![OmniSection::derivation(Derivation::new(self.z.neg(), CScalar::one(n)))];
        for i in 0..n {
            let eta = dj_cartan::Form::basis(&chart, &[i]);
            let x = VectorField::from_multivector(&contract(&self.pi, &eta));
            let g = self.z.pair(&eta);
            gens.push(OmniSection::new(Derivation::new(x, CScalar::zero(n)), Jet::new(eta, g)));
        }
        Frame::new(&chart, gens)
    }

    pub fn render(&self) -> String {
        format!("({}, {})", show::multivector(&self.pi), self.z.render())
    }
}

/// `[pi, pi] = 0` and `L_Z pi = -pi`.
pub fn check_hom_poisson(pi: &Multivector, z: &VectorField) -> Report {
    let mut rep = Report::new();
    let d1 = schouten(pi, pi);
    rep.record("[pi, pi] = 0", d1.is_zero(), || format!("[pi, pi] = {}", show::multivector(&d1)));
    let d2 = lie_multivector(z, pi).add(pi);
    rep.record("L_Z pi = -pi", d2.is_zero(), || format!("L_Z pi + pi = {}", show::multivector(&d2)));
    rep
}
