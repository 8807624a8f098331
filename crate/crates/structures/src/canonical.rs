//! The canonical gallery: standard structures on standard charts.

use std::sync::Arc;

use dj_atiyah::{AtiyahForm, GaugeEndo};
use dj_cartan::{Endo11, Form, Multivector, VectorField};
use dj_omni::Frame;
use dj_scalar::{CScalar, Chart};

use crate::dlcomplex::phi_can_on;
use crate::error::{StructError, StructResult};
use crate::gencontact::{eigenframe, GenContactOp};
use crate::homgc::{build_l_jz, HomGC};
use crate::jacobi::{HomPoisson, JacobiPair};

/// Names accepted by [`canonical`].
pub const GALLERY: &[&str] = &[
    "J_can",
    "piZ_can",
    "omega_can",
    "theta_can",
    "Omega_can",
    "Theta_can",
    "xi_can",
    "phi_can",
    "A_can",
    "K_contact_can",
    "K_complex_can",
    "hgc_complex_can",
    "hgc_symplectic_can",
    "L_Cn",
    "L_RxCn",
    "L_can_odd",
    "L_can_ev",
];

#[derive(Clone, Debug)]
pub enum Structure {
    Jacobi(JacobiPair),
    HomPoisson(HomPoisson),
    Atiyah(AtiyahForm),
    Form(Form),
    Gauge(GaugeEndo),
    Endo(Endo11),
    GenContact(GenContactOp),
    HomGC(HomGC),
    Frame(Frame),
}

fn indexed(base: &str, k: usize, i: usize) -> String {
    if k == 1 {
        base.to_string()
    } else {
        format!("{base}{}", i + 1)
    }
}

/// `(x^1, ..., x^d, p_1, ..., p_d, u)`; for `d = 1` simply `(x, p, u)`.
pub fn contact_chart(d: usize) -> Arc<Chart> {
    let mut names: Vec<String> = (0..d).map(|i| indexed("x", d, i)).collect();
    names.extend((0..d).map(|i| indexed("p", d, i)));
    names.push("u".into());
    Chart::new(&names).expect("distinct names")
}

/// `(x^1, ..., x^d, p_1, ..., p_d)`.
pub fn symplectic_chart(d: usize) -> Arc<Chart> {
    let mut names: Vec<String> = (0..d).map(|i| indexed("x", d, i)).collect();
    names.extend((0..d).map(|i| indexed("p", d, i)));
    Chart::new(&names).expect("distinct names")
}

/// `(x^1, ..., x^n, y^1, ..., y^n)`.
pub fn complex_chart(n: usize) -> Arc<Chart> {
    let mut names: Vec<String> = (0..n).map(|i| indexed("x", n, i)).collect();
    names.extend((0..n).map(|i| indexed("y", n, i)));
    Chart::new(&names).expect("distinct names")
}

/// `(u, x^1, ..., x^n, y^1, ..., y^n)`.
pub fn cylinder_chart(n: usize) -> Arc<Chart> {
    let mut names = vec!["u".to_string()];
    names.extend((0..n).map(|i| indexed("x", n, i)));
    names.extend((0..n).map(|i| indexed("y", n, i)));
    Chart::new(&names).expect("distinct names")
}

fn half(chart: &Arc<Chart>, odd: bool) -> usize {
    let dim = chart.dim();
    let ok = if odd { dim % 2 == 1 } else { dim % 2 == 0 && dim > 0 };
    assert!(ok, "chart has the wrong parity for this canonical structure");
    dim / 2
}

/// `Lambda_can = sum d/dp_i ^ (d/dx^i + p_i d/du)`, `E_can = d/du` on a
/// chart laid out as `(x.., p.., u)`.
pub fn j_can_on(chart: &Arc<Chart>) -> JacobiPair {
    let d = half(chart, true);
    let n = chart.dim();
    let u = 2 * d;
    let mut lambda = Multivector::zero(chart, 2);
    for i in 0..d {
        let (x, p) = (i, d + i);
        lambda = lambda.add(&Multivector::basis(chart, &[p, x]));
        lambda = lambda.add(&Multivector::basis(chart, &[p, u]).scale(&CScalar::var(n, p)));
    }
    JacobiPair::new(lambda, VectorField::basis(chart, u))
}

/// `pi_can = sum d/dp_i ^ d/dx^i`, `Z_can = sum p_i d/dp_i` on `(x.., p..)`.
pub fn hp_can_on(chart: &Arc<Chart>) -> HomPoisson {
    let d = half(chart, false);
    let n = chart.dim();
    let mut pi = Multivector::zero(chart, 2);
    let mut z = VectorField::zero(chart);
    for i in 0..d {
        pi = pi.add(&Multivector::basis(chart, &[d + i, i]));
        z = z.add(&VectorField::basis(chart, d + i).scale(&CScalar::var(n, d + i)));
    }
    HomPoisson::new(pi, z)
}

/// `sum dx^i ^ dp_i` on the first `2d` coordinates.
fn dx_dp(chart: &Arc<Chart>, d: usize) -> Form {
    (0..d).fold(Form::zero(chart, 2), |acc, i| acc.add(&Form::basis(chart, &[i, d + i])))
}

/// `sum p_i dx^i`.
fn p_dx(chart: &Arc<Chart>, d: usize) -> Form {
    let n = chart.dim();
    (0..d).fold(Form::zero(chart, 1), |acc, i| acc.add(&Form::basis(chart, &[i]).scale(&CScalar::var(n, d + i))))
}

/// `theta_can = du - sum p_i dx^i`.
pub fn theta_can_on(chart: &Arc<Chart>) -> Form {
    let d = half(chart, true);
    Form::basis(chart, &[2 * d]).sub(&p_dx(chart, d))
}

/// `omega_can = sum dx^i ^ dp_i - theta_can ^ j`.
pub fn omega_can_on(chart: &Arc<Chart>) -> AtiyahForm {
    let d = half(chart, true);
    AtiyahForm::new(2, dx_dp(chart, d), theta_can_on(chart).neg()).expect("degrees match")
}

/// `Omega_can = sum dx^i ^ dp_i`.
pub fn big_omega_can_on(chart: &Arc<Chart>) -> Form {
    dx_dp(chart, half(chart, false))
}

/// `Theta_can = sum p_i dx^i`.
pub fn big_theta_can_on(chart: &Arc<Chart>) -> Form {
    p_dx(chart, half(chart, false))
}

/// `xi_can = -d_D Theta_can`.
pub fn xi_can_on(chart: &Arc<Chart>) -> AtiyahForm {
    AtiyahForm::embed(&big_theta_can_on(chart)).d().neg()
}

/// Standard complex structure `d/dx^i -> d/dy^i`, `d/dy^i -> -d/dx^i`.
pub fn a_can_on(chart: &Arc<Chart>) -> Endo11 {
    let k = half(chart, false);
    let n = chart.dim();
    let mut m = vec![vec![CScalar::zero(n); n]; n];
    for i in 0..k {
        m[k + i][i] = CScalar::one(n);
        m[i][k + i] = CScalar::int(n, -1);
    }
    Endo11::new(chart, m)
}

/// `(A_can, 0, 0)` homogeneous with respect to the zero section.
pub fn hgc_complex_on(chart: &Arc<Chart>) -> HomGC {
    HomGC::new(a_can_on(chart), Multivector::zero(chart, 2), Form::zero(chart, 2), VectorField::zero(chart), Form::zero(chart, 1))
}

/// Symplectic structure `(0, pi_can#; -Omega_can_flat, 0)` with
/// `Z = Z_can`, `zeta = 0`.
pub fn hgc_symplectic_on(chart: &Arc<Chart>) -> HomGC {
    let hp = hp_can_on(chart);
    HomGC::new(Endo11::zero(chart), hp.pi, big_omega_can_on(chart).neg(), hp.z, Form::zero(chart, 1))
}

/// `(DR_M (x) C)^B`, the complex B-field transform of the derivation frame.
pub fn derivations_bfield(chart: &Arc<Chart>, b: &AtiyahForm) -> StructResult<Frame> {
    Ok(Frame::derivations(chart).bfield(b, false)?)
}

/// `i * b` for a real Atiyah form.
pub fn times_i(b: &AtiyahForm) -> AtiyahForm {
    b.scale(&CScalar::i(b.dim()))
}

pub fn canonical(name: &str, size: usize) -> StructResult<Structure> {
    if !GALLERY.contains(&name) {
        return Err(StructError::UnknownName(name.to_string()));
    }
    if size == 0 || size > 4 {
        return Err(StructError::InvalidSize { name: name.to_string(), size });
    }
    let odd = || contact_chart(size);
    let even = || symplectic_chart(size);
    Ok(match name {
        "J_can" => Structure::Jacobi(j_can_on(&odd())),
        "piZ_can" => Structure::HomPoisson(hp_can_on(&even())),
        "omega_can" => Structure::Atiyah(omega_can_on(&odd())),
        "theta_can" => Structure::Form(theta_can_on(&odd())),
        "Omega_can" => Structure::Form(big_omega_can_on(&even())),
        "Theta_can" => Structure::Form(big_theta_can_on(&even())),
        "xi_can" => Structure::Atiyah(xi_can_on(&even())),
        "phi_can" => Structure::Gauge(phi_can_on(&cylinder_chart(size))),
        "A_can" => Structure::Endo(a_can_on(&complex_chart(size))),
        "K_contact_can" => {
            let c = odd();
            Structure::GenContact(GenContactOp::contact(&j_can_on(&c), &omega_can_on(&c))?)
        }
        "K_complex_can" => Structure::GenContact(GenContactOp::complex_type(&phi_can_on(&cylinder_chart(size)))),
        "hgc_complex_can" => Structure::HomGC(hgc_complex_on(&complex_chart(size))),
        "hgc_symplectic_can" => Structure::HomGC(hgc_symplectic_on(&even())),
        "L_Cn" => Structure::Frame(build_l_jz(&hgc_complex_on(&complex_chart(size)))?),
        "L_RxCn" => Structure::Frame(eigenframe(&GenContactOp::complex_type(&phi_can_on(&cylinder_chart(size))))?),
        "L_can_odd" => {
            let c = odd();
            Structure::Frame(derivations_bfield(&c, &times_i(&omega_can_on(&c)))?)
        }
        "L_can_ev" => {
            let c = even();
            Structure::Frame(derivations_bfield(&c, &times_i(&xi_can_on(&c)))?)
        }
        _ => unreachable!("name checked against the gallery"),
    })
}
