//! Product formulas around contact and lcs leaves, inversion of
//! non-degenerate Jacobi pairs and the Jacobi pair of an lcs structure.

use std::sync::Arc;

use dj_atiyah::{AtiyahForm, Derivation};
use dj_cartan::{contract, d, Form, GeomError, Multivector, VectorField};
use dj_scalar::{linalg, CScalar, Chart};

use crate::canonical::{contact_chart, hp_can_on, j_can_on, symplectic_chart};
use crate::error::{StructError, StructResult};
use crate::jacobi::JacobiPair;
use crate::show;

/// Inverse of a non-degenerate Jacobi pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseJacobi {
    /// Atiyah 2-form with `omega_flat = (J#)^{-1}`.
    pub omega: AtiyahForm,
    /// `i_1 omega`.
    pub theta: Form,
}

pub fn invert_jacobi(j: &JacobiPair) -> StructResult<InverseJacobi> {
    let chart = j.chart().clone();
    let n = chart.dim();
    let f = linalg::invert(&j.sharp_matrix(), n).map_err(|_| StructError::Degenerate("J# is not invertible".into()))?;
    // omega(D_a, D_b) = <omega_flat D_a, D_b> = f[b][a].
    let mut w0 = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            w0.push((vec![a, b], f[b][a].clone()));
        }
    }
    let w1: Vec<(Vec<usize>, CScalar)> = (0..n).map(|a| (vec![a], f[n][a].clone())).collect();
    let omega = AtiyahForm::new(2, Form::from_terms(&chart, 2, w0), Form::from_terms(&chart, 1, w1))?;
    let dw = omega.d();
    if !dw.is_zero() {
        return Err(StructError::NotClosed(dw.render()));
    }
    let theta = omega.interior(&Derivation::one(&chart)).to_jet()?.eta;
    Ok(InverseJacobi { omega, theta })
}

/// Jacobi pair of `(lambda, mu) -> Omega^{-1}(d lambda + gamma lambda,
/// d mu + gamma mu)` for a non-degenerate 2-form `Omega` and a closed
/// connection form `gamma`.
pub fn lcs_to_jacobi(omega: &Form, gamma: &Form) -> StructResult<JacobiPair> {
    let chart = omega.chart().clone();
    dj_cartan::ensure_same_chart(&chart, gamma.chart())?;
    let n = chart.dim();
    if n % 2 == 1 {
        return Err(StructError::Degenerate("odd-dimensional chart".into()));
    }
    let dg = d(gamma);
    if !dg.is_zero() {
        return Err(StructError::NotFlat(show::form(&dg)));
    }
    let w: Vec<Vec<CScalar>> = (0..n).map(|a| (0..n).map(|b| omega.coeff(&[a, b])).collect()).collect();
    let p = linalg::invert(&w, n).map_err(|_| StructError::Degenerate("2-form is not invertible".into()))?;
    let mut items = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            items.push((vec![a, b], p[a][b].clone()));
        }
    }
    let lambda = Multivector::from_terms(&chart, 2, items);
    let e = VectorField::from_multivector(&contract(&lambda, gamma)).neg();
    let pair = JacobiPair::new(lambda, e);
    let r = linalg::rank(&pair.sharp_matrix());
    if r != n {
        return Err(StructError::Degenerate(format!("rank of J is {r}, expected {n}")));
    }
    Ok(pair)
}

/// Product of `factor` with the canonical chart `canon`; canonical
/// coordinates that clash with `factor` are renamed to upper case.
fn product_with(factor: &Arc<Chart>, canon: &Arc<Chart>) -> StructResult<(Arc<Chart>, Arc<Chart>)> {
    let canon = if canon.names().iter().any(|c| factor.names().contains(c)) {
        let upper: Vec<String> = canon.names().iter().map(|s| s.to_uppercase()).collect();
        Chart::new(&upper)?
    } else {
        canon.clone()
    };
    let product = Chart::product(factor, &canon)
        .ok_or_else(|| GeomError::CoordinateClash(format!("({}) and ({})", factor.names().join(", "), canon.names().join(", "))))?;
    Ok((canon, product))
}

fn index_map(small: &Chart, big: &Chart) -> Vec<usize> {
    small.names().iter().map(|s| big.index_of(s).expect("factor coordinate in product")).collect()
}

fn lift_mv(m: &Multivector, big: &Arc<Chart>) -> Multivector {
    let map = index_map(m.chart(), big);
    let nb = big.dim();
    m.transport(big, &map, |c| c.reindex(&map, nb))
}

fn lift_vec(v: &VectorField, big: &Arc<Chart>) -> VectorField {
    VectorField::from_multivector(&lift_mv(&v.to_multivector(), big))
}

/// `Lambda = Lambda_can + pi_N - E_can ^ Z_N`, `E = E_can` on `N x R^{2d+1}`.
pub fn split_contact(pi_n: &Multivector, z_n: &VectorField, d: usize) -> StructResult<JacobiPair> {
    dj_cartan::ensure_same_chart(pi_n.chart(), z_n.chart())?;
    let (canon, product) = product_with(pi_n.chart(), &contact_chart(d))?;
    let jc = j_can_on(&canon);
    let e = lift_vec(&jc.e, &product);
    let lambda = lift_mv(&jc.lambda, &product)
        .add(&lift_mv(pi_n, &product))
        .sub(&e.to_multivector().wedge(&lift_vec(z_n, &product).to_multivector()));
    Ok(JacobiPair::new(lambda, e))
}

/// `Lambda = Lambda_N + pi_can - E_N ^ Z_can`, `E = E_N` on `N x R^{2d}`.
pub fn split_lcs(lambda_n: &Multivector, e_n: &VectorField, d: usize) -> StructResult<JacobiPair> {
    dj_cartan::ensure_same_chart(lambda_n.chart(), e_n.chart())?;
    let (canon, product) = product_with(lambda_n.chart(), &symplectic_chart(d))?;
    let hp = hp_can_on(&canon);
    let e = lift_vec(e_n, &product);
    let lambda = lift_mv(lambda_n, &product)
        .add(&lift_mv(&hp.pi, &product))
        .sub(&e.to_multivector().wedge(&lift_vec(&hp.z, &product).to_multivector()));
    Ok(JacobiPair::new(lambda, e))
}
