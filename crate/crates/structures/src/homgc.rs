//! Homogeneous generalized complex structures `(J, (Z, zeta))` on
//! `TM + T*M` and the complex Dirac-Jacobi structures they induce.

use std::sync::Arc;

use dj_atiyah::{Derivation, Jet};
use dj_cartan::{d, interior, lie_form, lie_multivector, one_form, one_form_comps, Endo11, Form, Multivector, Report, VectorField};
use dj_omni::{Frame, OmniSection};
use dj_scalar::{linalg, CScalar, Chart};

use crate::error::{StructError, StructResult};
use crate::gencontact::{eigen_columns, first_entry, skew_defect_matrix, square_defect_matrix};
use crate::show;

/// Section `X + xi` of the generalized tangent bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSection {
    pub x: VectorField,
    pub xi: Form,
}

impl TSection {
    pub fn from_components(chart: &Arc<Chart>, c: &[CScalar]) -> Self {
        let n = chart.dim();
        TSection { x: VectorField::new(chart, c[..n].to_vec()), xi: one_form(chart, &c[n..]) }
    }

    pub fn components(&self) -> Vec<CScalar> {
        self.x.comps().iter().cloned().chain(one_form_comps(&self.xi)).collect()
    }

    /// `<X + xi, Y + eta> = xi(Y) + eta(X)`.
    pub fn pair(&self, o: &Self) -> CScalar {
        &o.x.pair(&self.xi) + &self.x.pair(&o.xi)
    }

    /// Dorfman bracket `[X, Y] + L_X eta - i_Y d xi`.
    pub fn dorfman(&self, o: &Self) -> Self {
        TSection { x: self.x.bracket(&o.x), xi: lie_form(&self.x, &o.xi).sub(&interior(&o.x, &d(&self.xi))) }
    }

    pub fn render(&self) -> String {
        format!("({}, {})", self.x.render(), show::form(&self.xi))
    }
}

/// Block data `J = (A, pi#; sigma_flat, -A^T)` with the homogeneity pair
/// `(Z, zeta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomGC {
    pub a: Endo11,
    pub pi: Multivector,
    pub sigma: Form,
    pub z: VectorField,
    pub zeta: Form,
}

fn zeta_flat(w: &Form) -> Vec<Vec<CScalar>> {
    // Column `a` holds the components of `i_{d/dx^a} w`.
    let n = w.dim();
    (0..n).map(|b| (0..n).map(|a| w.coeff(&[a, b])).collect()).collect()
}

impl HomGC {
    pub fn new(a: Endo11, pi: Multivector, sigma: Form, z: VectorField, zeta: Form) -> Self {
        let chart = a.chart().clone();
        for c in [pi.chart(), sigma.chart(), z.chart(), zeta.chart()] {
            assert!(c == &chart, "homogeneous generalized complex data on different charts");
        }
        assert!(pi.deg() == 2 || pi.is_zero());
        assert!(sigma.deg() == 2 || sigma.is_zero());
        assert!(zeta.deg() == 1 || zeta.is_zero());
        HomGC { a, pi, sigma, z, zeta }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.a.chart()
    }

    /// `2n x 2n` matrix in the frame `d/dx^1, ..., d/dx^n, dx^1, ..., dx^n`.
    pub fn matrix(&self) -> Vec<Vec<CScalar>> {
        let n = self.chart().dim();
        let a = self.a.matrix();
        let mut m = vec![vec![CScalar::zero(n); 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = a[i][j].clone();
                m[n + i][n + j] = -&a[j][i];
                // pi#(dx^j) = pi(dx^j, -) has i-th component pi^{ji}.
                m[i][n + j] = self.pi.coeff(&[j, i]);
                // sigma_flat(d/dx^j) = i_{d/dx^j} sigma has i-th component sigma_{ji}.
                m[n + i][j] = self.sigma.coeff(&[j, i]);
            }
        }
        m
    }

    pub fn apply(&self, s: &TSection) -> TSection {
        let m = self.matrix();
        let v = s.components();
        let n = self.chart().dim();
        let out: Vec<CScalar> =
            m.iter().map(|row| row.iter().zip(&v).fold(CScalar::zero(n), |acc, (a, b)| &acc + &(a * b))).collect();
        TSection::from_components(self.chart(), &out)
    }

    /// Generators of the `+i`-eigenbundle, polynomial and independent.
    pub fn eigenframe(&self) -> StructResult<Vec<TSection>> {
        let chart = self.chart().clone();
        let nv = chart.dim();
        let m = self.matrix();
        if let Some(w) = first_entry(&square_defect_matrix(&m, nv), chart.names(), show::generalized_basis, "(J^2 + 1)") {
            return Err(StructError::NotGeneralizedComplex(w));
        }
        let cols = eigen_columns(&m, nv);
        let mat: Vec<Vec<CScalar>> = (0..2 * nv).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        Ok(linalg::independent_columns(&mat)
            .into_iter()
            .map(|j| TSection::from_components(&chart, &linalg::primitive_row(&cols[j])))
            .collect())
    }

    pub fn render(&self) -> String {
        format!(
            "(A = {}, pi = {}, sigma = {}, Z = {}, zeta = {})",
            self.a.render(),
            show::multivector(&self.pi),
            show::form(&self.sigma),
            self.z.render(),
            show::form(&self.zeta)
        )
    }
}

/// `(i_A w)(X, Y) = w(AX, Y) + w(X, AY)`.
pub fn interior_endo(a: &Endo11, w: &Form) -> Form {
    let n = a.chart().dim();
    let m = a.matrix();
    let mut items = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut c = CScalar::zero(n);
            for k in 0..n {
                c = &c + &(&m[k][i] * &w.coeff(&[k, j]));
                c = &c + &(&w.coeff(&[i, k]) * &m[k][j]);
            }
            items.push((vec![i, j], c));
        }
    }
    Form::from_terms(a.chart(), 2, items)
}

/// Almost complexity and skewness of `J` are preconditions; integrability,
/// the three homogeneity equations and the eigenbundle characterization
/// are reported.
pub fn check_hom_gc(h: &HomGC) -> StructResult<Report> {
    let chart = h.chart().clone();
    let names = chart.names();
    let m = h.matrix();
    let skew = skew_defect_matrix(&m);
    if let Some(w) = first_entry(&skew, names, show::generalized_basis, "(GJ + J^T G)") {
        return Err(StructError::NotGeneralizedComplex(w));
    }
    let gens = h.eigenframe()?;
    let mut rep = Report::new();

    let mut witness = None;
    'outer: for (j, b) in gens.iter().enumerate() {
        for (k, c) in gens.iter().enumerate() {
            let br = b.dorfman(c);
            for (i, a) in gens.iter().enumerate() {
                let v = a.pair(&br);
                if !v.is_zero() {
                    witness = Some(format!("<g{}, [g{}, g{}]> = {}", i + 1, j + 1, k + 1, v.render(names)));
                    break 'outer;
                }
            }
        }
    }
    rep.record("integrable", witness.is_none(), || witness.unwrap_or_default());

    let dzeta = d(&h.zeta);
    let pi_sharp = Endo11::new(&chart, (0..chart.dim()).map(|i| (0..chart.dim()).map(|j| h.pi.coeff(&[j, i])).collect()).collect());
    let dz_flat = Endo11::new(&chart, zeta_flat(&dzeta));
    let d1 = h.a.lie(&h.z).sub(&pi_sharp.compose(&dz_flat));
    rep.record("L_Z A = pi# o (d zeta)_flat", d1.is_zero(), || format!("L_Z A - pi# o (d zeta)_flat = {}", d1.render()));
    let d2 = lie_multivector(&h.z, &h.pi).add(&h.pi);
    rep.record("L_Z pi = -pi", d2.is_zero(), || format!("L_Z pi + pi = {}", show::multivector(&d2)));
    let d3 = lie_form(&h.z, &h.sigma).sub(&h.sigma).add(&interior_endo(&h.a, &dzeta));
    rep.record("L_Z sigma = sigma - i_A d zeta", d3.is_zero(), || {
        format!("L_Z sigma - sigma + i_A d zeta = {}", show::form(&d3))
    });

    // ([Z, X] + X, L_Z eta + i_X d zeta) stays in the eigenbundle.
    let mut witness = None;
    for (i, g) in gens.iter().enumerate() {
        let v = TSection { x: h.z.bracket(&g.x).add(&g.x), xi: lie_form(&h.z, &g.xi).add(&interior(&g.x, &dzeta)) };
        let jv = h.apply(&v);
        let iv = TSection { x: v.x.scale(&CScalar::i(chart.dim())), xi: v.xi.scale(&CScalar::i(chart.dim())) };
        let diff = TSection { x: jv.x.sub(&iv.x), xi: jv.xi.sub(&iv.xi) };
        if !(diff.x.is_zero() && diff.xi.is_zero()) {
            witness = Some(format!("(J - i) applied to the image of g{} = {}", i + 1, diff.render()));
            break;
        }
    }
    rep.record("eigenbundle preserved by ([Z, -] + 1, L_Z + i_- d zeta)", witness.is_none(), || witness.unwrap_or_default());
    Ok(rep)
}

/// Complex Dirac-Jacobi structure spanned by `(1 - Z, zeta + zeta(Z) j)` and
/// `(X, eta + (eta(Z) - zeta(X)) j)` for `(X, eta)` in the eigenbundle.
pub fn build_l_jz(h: &HomGC) -> StructResult<Frame> {
    let chart = h.chart().clone();
    let n = chart.dim();
    let mut gens = vec![OmniSection::new(Derivation::new(h.z.neg(), CScalar::one(n)), Jet::new(h.zeta.clone(), h.z.pair(&h.zeta)))];
    for g in h.eigenframe()? {
        let c = &g.x.pair(&h.zeta);
        let gj = &h.z.pair(&g.xi) - c;
        gens.push(OmniSection::new(Derivation::new(g.x.clone(), CScalar::zero(n)), Jet::new(g.xi.clone(), gj)));
    }
    Ok(Frame::new(&chart, gens))
}
