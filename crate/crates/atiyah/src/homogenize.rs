//! Homogenization: sections of the trivial line bundle become functions of
//! weight one on the total space of its dual, `lambda -> t lambda`, and
//! derivations become homogeneous vector fields `X + f t d/dt`.

use std::sync::Arc;

use dj_cartan::{Endo11, GeomError, GeomResult, VectorField};
use dj_scalar::{CScalar, Chart};

use crate::derivation::Derivation;
use crate::gauge::GaugeEndo;

/// Name of the fibre coordinate appended to the chart.
pub const HOMOGENEOUS_COORDINATE: &str = "t";

fn extend(chart: &Chart) -> GeomResult<Arc<Chart>> {
    chart.extended(HOMOGENEOUS_COORDINATE).ok_or_else(|| {
        GeomError::CoordinateClash(format!("'{HOMOGENEOUS_COORDINATE}' is already a coordinate of the chart"))
    })
}

fn lift(c: &CScalar, n: usize) -> CScalar {
    let map: Vec<usize> = (0..n).collect();
    c.reindex(&map, n + 1)
}

/// `lambda -> t lambda` on the extended chart.
pub fn homogenize_scalar(lambda: &CScalar, chart: &Chart) -> GeomResult<(CScalar, Arc<Chart>)> {
    let ext = extend(chart)?;
    let n = chart.dim();
    Ok((&CScalar::var(n + 1, n) * &lift(lambda, n), ext))
}

/// `X + f -> X + f t d/dt`.
pub fn homogenize_derivation(d: &Derivation) -> GeomResult<VectorField> {
    let ext = extend(d.chart())?;
    let n = d.dim();
    let t = CScalar::var(n + 1, n);
    let mut comps: Vec<CScalar> = d.x.comps().iter().map(|c| lift(c, n)).collect();
    comps.push(&t * &lift(&d.f, n));
    Ok(VectorField::new(&ext, comps))
}

/// Lift of a gauge endomorphism to a (1,1)-tensor on the extended chart,
/// determined by `phi~(Delta~) = (phi Delta)~` on the standard frame.
pub fn homogenize_endo(phi: &GaugeEndo) -> GeomResult<Endo11> {
    let ext = extend(phi.chart())?;
    let n = phi.chart().dim();
    let t = CScalar::var(n + 1, n);
    let tinv = t.inv().expect("t is a nonzero function");
    let m = phi.matrix();
    let mut out = vec![vec![CScalar::zero(n + 1); n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = lift(&m[i][j], n);
        }
        out[i][n] = &lift(&m[i][n], n) * &tinv;
    }
    for j in 0..n {
        out[n][j] = &t * &lift(&m[n][j], n);
    }
    out[n][n] = lift(&m[n][n], n);
    Ok(Endo11::new(&ext, out))
}
