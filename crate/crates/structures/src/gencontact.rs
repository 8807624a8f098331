//! Generalized contact operators `K` on `DL + J^1 L`, stored as matrices in
//! the ordered frame `d/dx^1, ..., d/dx^n, 1, dx^1, ..., dx^n, j`.

use std::sync::Arc;

use dj_atiyah::{AtiyahForm, GaugeEndo};
use dj_cartan::Report;
use dj_omni::{check_involutive, Frame, OmniSection};
use dj_scalar::{linalg, CScalar, Chart};

use crate::error::{StructError, StructResult};
use crate::jacobi::JacobiPair;
use crate::show;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenContactOp {
    chart: Arc<Chart>,
    k: Vec<Vec<CScalar>>,
}

fn block(m: &[Vec<CScalar>], r0: usize, c0: usize, size: usize) -> Vec<Vec<CScalar>> {
    (0..size).map(|i| (0..size).map(|j| m[r0 + i][c0 + j].clone()).collect()).collect()
}

fn assemble(a: &[Vec<CScalar>], b: &[Vec<CScalar>], c: &[Vec<CScalar>], d: &[Vec<CScalar>]) -> Vec<Vec<CScalar>> {
    let top = a.iter().zip(b).map(|(x, y)| x.iter().chain(y).cloned().collect());
    let bottom = c.iter().zip(d).map(|(x, y)| x.iter().chain(y).cloned().collect());
    top.chain(bottom).collect()
}

fn neg(m: &[Vec<CScalar>]) -> Vec<Vec<CScalar>> {
    m.iter().map(|r| r.iter().map(|c| -c).collect()).collect()
}

/// First nonzero entry of a matrix, rendered with frame names.
pub(crate) fn first_entry(
    m: &[Vec<CScalar>],
    names: &[String],
    basis: impl Fn(&[String], usize) -> String,
    label: &str,
) -> Option<String> {
    for (j, _) in m.first()?.iter().enumerate() {
        for (i, row) in m.iter().enumerate() {
            if !row[j].is_zero() {
                return Some(format!(
                    "{label}({}) has {}-component {}",
                    basis(names, j),
                    basis(names, i),
                    row[j].render(names)
                ));
            }
        }
    }
    None
}

/// `G K + K^T G` for the split pairing `G = [[0, 1], [1, 0]]`.
pub(crate) fn skew_defect_matrix(k: &[Vec<CScalar>]) -> Vec<Vec<CScalar>> {
    let r = k.len() / 2;
    let g = |i: usize| if i < r { i + r } else { i - r };
    (0..2 * r).map(|i| (0..2 * r).map(|j| &k[g(i)][j] + &k[g(j)][i]).collect()).collect()
}

pub(crate) fn square_defect_matrix(k: &[Vec<CScalar>], nvars: usize) -> Vec<Vec<CScalar>> {
    let sq = linalg::matmul(k, k, nvars);
    sq.iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, c)| if i == j { c + &CScalar::one(nvars) } else { c.clone() }).collect())
        .collect()
}

/// Columns of `1 - i K`, which span the `+i`-eigenspace when `K^2 = -1`.
pub(crate) fn eigen_columns(k: &[Vec<CScalar>], nvars: usize) -> Vec<Vec<CScalar>> {
    let m = k.len();
    (0..m)
        .map(|j| {
            (0..m)
                .map(|i| {
                    let t = -&k[i][j].times_i();
                    if i == j {
                        &t + &CScalar::one(nvars)
                    } else {
                        t
                    }
                })
                .collect()
        })
        .collect()
}

impl GenContactOp {
    pub fn from_matrix(chart: &Arc<Chart>, k: Vec<Vec<CScalar>>) -> StructResult<Self> {
        let r = 2 * (chart.dim() + 1);
        if k.len() != r || k.iter().any(|row| row.len() != r) {
            return Err(dj_cartan::GeomError::DimensionMismatch(format!("operator needs a {r}x{r} matrix")).into());
        }
        Ok(GenContactOp { chart: chart.clone(), k })
    }

    /// `K = (phi, J#; omega_flat, -phi^T)`.
    pub fn from_blocks(phi: &GaugeEndo, j: &JacobiPair, omega: &AtiyahForm) -> StructResult<Self> {
        let chart = phi.chart().clone();
        dj_cartan::ensure_same_chart(&chart, j.chart())?;
        dj_cartan::ensure_same_chart(&chart, omega.chart())?;
        let a = phi.matrix().to_vec();
        let d = neg(&linalg::transpose(&a));
        let k = assemble(&a, &j.sharp_matrix(), &omega.flat_matrix()?, &d);
        Self::from_matrix(&chart, k)
    }

    /// Contact-type operator `(0, J#; -omega_flat, 0)`.
    pub fn contact(j: &JacobiPair, omega: &AtiyahForm) -> StructResult<Self> {
        Self::from_blocks(&GaugeEndo::zero(j.chart()), j, &omega.neg())
    }

    /// Contact-type operator built from a non-degenerate Jacobi pair and
    /// its inverse Atiyah form.
    pub fn contact_from_jacobi(j: &JacobiPair) -> StructResult<Self> {
        let inv = crate::split::invert_jacobi(j)?;
        Self::contact(j, &inv.omega)
    }

    /// Complex-type operator `(phi, 0; 0, -phi^T)`.
    pub fn complex_type(phi: &GaugeEndo) -> Self {
        let chart = phi.chart().clone();
        let z = GaugeEndo::zero(&chart).matrix().to_vec();
        let a = phi.matrix().to_vec();
        let d = neg(&linalg::transpose(&a));
        GenContactOp { chart, k: assemble(&a, &z, &z, &d) }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn matrix(&self) -> &[Vec<CScalar>] {
        &self.k
    }

    pub fn phi(&self) -> GaugeEndo {
        let r = self.chart.dim() + 1;
        GaugeEndo::new(&self.chart, block(&self.k, 0, 0, r)).expect("block has the right size")
    }

    pub fn apply(&self, s: &OmniSection) -> OmniSection {
        let v = s.components();
        let out: Vec<CScalar> = self
            .k
            .iter()
            .map(|row| row.iter().zip(&v).fold(CScalar::zero(self.chart.dim()), |acc, (a, b)| &acc + &(a * b)))
            .collect();
        OmniSection::from_components(&self.chart, &out)
    }

    /// `e^B K e^{-B}`.
    pub fn conjugate_bfield(&self, b: &AtiyahForm) -> StructResult<Self> {
        dj_cartan::ensure_same_chart(&self.chart, b.chart())?;
        let nv = self.chart.dim();
        let r = nv + 1;
        let id = linalg::identity(r, nv);
        let z = GaugeEndo::zero(&self.chart).matrix().to_vec();
        let bf = b.flat_matrix()?;
        let e_plus = assemble(&id, &z, &bf, &id);
        let e_minus = assemble(&id, &z, &neg(&bf), &id);
        let k = linalg::matmul(&linalg::matmul(&e_plus, &self.k, nv), &e_minus, nv);
        Self::from_matrix(&self.chart, k)
    }

    /// Witness of `K^2 != -1`, if any.
    pub fn square_defect(&self) -> Option<String> {
        first_entry(&square_defect_matrix(&self.k, self.chart.dim()), self.chart.names(), show::omni_basis, "(K^2 + 1)")
    }

    /// Witness of `<<K a, b>> + <<a, K b>> != 0` on frame elements, if any.
    pub fn skew_defect(&self) -> Option<String> {
        let m = skew_defect_matrix(&self.k);
        let names = self.chart.names();
        for i in 0..m.len() {
            for j in 0..m.len() {
                if !m[i][j].is_zero() {
                    return Some(format!(
                        "<<K {a}, {b}>> + <<{a}, K {b}>> = {}",
                        m[i][j].render(names),
                        a = show::omni_basis(names, j),
                        b = show::omni_basis(names, i)
                    ));
                }
            }
        }
        None
    }

    pub fn render(&self) -> String {
        let names = self.chart.names();
        let mut parts = Vec::new();
        for (i, row) in self.k.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    parts.push(format!(
                        "({})*{} -> {}",
                        c.render(names),
                        show::omni_basis(names, j),
                        show::omni_basis(names, i)
                    ));
                }
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(", ")
        }
    }
}

/// Frame of the `+i`-eigenbundle of `K`.
pub fn eigenframe(k: &GenContactOp) -> StructResult<Frame> {
    if let Some(w) = k.square_defect() {
        return Err(StructError::NotAlmostComplex(w));
    }
    let chart = k.chart().clone();
    let gens = eigen_columns(&k.k, chart.dim()).iter().map(|c| OmniSection::from_components(&chart, c)).collect();
    Ok(Frame::new(&chart, gens).reduced())
}

/// Almost complex, skew with respect to the pairing, and integrable (the
/// `+i`-eigenframe is involutive).
pub fn check_gen_contact(k: &GenContactOp) -> Report {
    let mut rep = Report::new();
    let sq = k.square_defect();
    let almost = sq.is_none();
    rep.record("K^2 = -1", almost, || sq.unwrap_or_default());
    let sk = k.skew_defect();
    let skew = sk.is_none();
    rep.record("K skew", skew, || sk.unwrap_or_default());
    if !(almost && skew) {
        rep.fail("integrable", "not checked: K is not a skew almost complex operator");
        return rep;
    }
    match eigenframe(k).map_err(|e| e.to_string()).and_then(|f| check_involutive(&f).map_err(|e| e.to_string())) {
        Ok(r) => rep.extend("eigenframe ", r),
        Err(e) => rep.fail("integrable", e),
    }
    rep
}
