//! Exact linear algebra over the field of complex rational functions.
//!
//! Rows are brought to polynomial form by clearing denominators, after which
//! a fraction-free Gauss-Jordan elimination (Bareiss) runs over polynomials
//! with Gaussian rational coefficients.

use num_rational::BigRational;

use crate::cscalar::{clear_row, CPoly, CScalar};
use crate::error::ScalarError;
use crate::field::{Field, QI};
use crate::gcd::gcd;

/// Dense matrix stored by rows.
pub type Matrix = Vec<Vec<CScalar>>;

struct Reduced {
    rows: Vec<Vec<CPoly>>,
    /// Pivot column of each of the first `pivots.len()` rows.
    pivots: Vec<usize>,
    /// Common value of every pivot entry after reduction.
    det: CPoly,
}

fn pivot_cost(p: &CPoly) -> (u8, u32, usize) {
    (u8::from(!p.is_constant()), p.total_degree(), p.len())
}

fn reduce(rows: Vec<Vec<CPoly>>, ncols: usize, stop_col: usize) -> Reduced {
    let nvars = rows
        .iter()
        .flat_map(|r| r.iter())
        .map(|p| p.nvars())
        .next()
        .unwrap_or(0);
    let mut rows = rows;
    let nrows = rows.len();
    let mut prev = CPoly::one(nvars);
    let mut pivots = Vec::new();
    let mut cur = 0;
    for c in 0..stop_col.min(ncols) {
        if cur == nrows {
            break;
        }
        let best = (cur..nrows)
            .filter(|&r| !rows[r][c].is_zero())
            .min_by_key(|&r| pivot_cost(&rows[r][c]));
        let Some(best) = best else { continue };
        rows.swap(cur, best);
        let piv = rows[cur][c].clone();
        let pivot_row = rows[cur].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == cur {
                continue;
            }
            let factor = row[c].clone();
            for j in 0..ncols {
                let a = piv.mul(&row[j]);
                let v = if factor.is_zero() || pivot_row[j].is_zero() {
                    a
                } else {
                    a.sub(&factor.mul(&pivot_row[j]))
                };
                row[j] = if prev.is_one() {
                    v
                } else {
                    v.div_exact(&prev).expect("fraction-free elimination divides exactly")
                };
            }
        }
        prev = piv;
        pivots.push(c);
        cur += 1;
    }
    // Earlier pivot rows were rescaled as later pivots were processed; in the
    // fraction-free scheme every pivot entry ends equal to the last pivot.
    Reduced { rows, pivots, det: prev }
}

fn to_poly_rows(m: &[Vec<CScalar>]) -> Vec<Vec<CPoly>> {
    m.iter().map(|r| clear_row(r)).collect()
}

fn ncols_of(m: &[Vec<CScalar>]) -> usize {
    m.first().map(|r| r.len()).unwrap_or(0)
}

/// Generic rank over the field of rational functions.
pub fn rank(m: &[Vec<CScalar>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let n = ncols_of(m);
    reduce(to_poly_rows(m), n, n).pivots.len()
}

/// Indices of a maximal set of linearly independent columns (the pivot
/// columns of the reduced form, in increasing order).
pub fn independent_columns(m: &[Vec<CScalar>]) -> Vec<usize> {
    if m.is_empty() {
        return Vec::new();
    }
    let n = ncols_of(m);
    reduce(to_poly_rows(m), n, n).pivots
}

fn strip_content(v: Vec<CPoly>) -> Vec<CPoly> {
    let mut g: Option<CPoly> = None;
    for p in v.iter().filter(|p| !p.is_zero()) {
        g = Some(match g {
            None => p.monic(),
            Some(g) => gcd(&g, p),
        });
        if g.as_ref().map(|g| g.is_constant()).unwrap_or(false) {
            break;
        }
    }
    let Some(g) = g else { return v };
    let mut out: Vec<CPoly> = if g.is_constant() {
        v
    } else {
        v.iter().map(|p| p.div_exact(&g).expect("content divides")).collect()
    };
    // Make the first nonzero entry have leading coefficient one.
    if let Some(first) = out.iter().find(|p| !p.is_zero()) {
        let lc = first.lc();
        if !lc.is_one() {
            let inv = lc.inv();
            out = out.iter().map(|p| p.scale(&inv)).collect();
        }
    }
    out
}

/// Rescale a vector by a nonzero rational function so that its entries are
/// polynomials without common factor and the first nonzero entry has
/// leading coefficient one. Spans are unchanged.
pub fn primitive_row(row: &[CScalar]) -> Vec<CScalar> {
    if row.iter().all(|c| c.is_zero()) {
        return row.to_vec();
    }
    strip_content(clear_row(row)).iter().map(CScalar::from_cpoly).collect()
}

/// Basis of the kernel `{x : m x = 0}`. Basis vectors are polynomial with
/// coprime entries.
pub fn kernel(m: &[Vec<CScalar>], ncols: usize, nvars: usize) -> Vec<Vec<CScalar>> {
    if m.is_empty() {
        return (0..ncols)
            .map(|j| {
                (0..ncols)
                    .map(|k| if k == j { CScalar::one(nvars) } else { CScalar::zero(nvars) })
                    .collect()
            })
            .collect();
    }
    let red = reduce(to_poly_rows(m), ncols, ncols);
    let mut out = Vec::new();
    for f in 0..ncols {
        if red.pivots.contains(&f) {
            continue;
        }
        let mut v = vec![CPoly::zero(nvars); ncols];
        v[f] = red.det.clone();
        for (r, &pc) in red.pivots.iter().enumerate() {
            v[pc] = red.rows[r][f].neg();
        }
        let v = strip_content(v);
        out.push(v.iter().map(CScalar::from_cpoly).collect());
    }
    out
}

/// Solve `a x = b`. Returns a particular solution (free variables set to
/// zero) together with a kernel basis.
pub fn solve(
    a: &[Vec<CScalar>],
    b: &[CScalar],
    nvars: usize,
) -> Result<(Vec<CScalar>, Vec<Vec<CScalar>>), ScalarError> {
    if a.len() != b.len() {
        return Err(ScalarError::DimensionMismatch("rows of a and b".into()));
    }
    let ncols = if a.is_empty() { 0 } else { ncols_of(a) };
    let aug: Vec<Vec<CScalar>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let red = reduce(to_poly_rows(&aug), ncols + 1, ncols);
    // Rows below the pivots must have a vanishing right-hand side.
    for row in red.rows.iter().skip(red.pivots.len()) {
        if !row[ncols].is_zero() {
            return Err(ScalarError::InconsistentSystem);
        }
    }
    let det = CScalar::from_cpoly(&red.det);
    let mut x = vec![CScalar::zero(nvars); ncols];
    for (r, &pc) in red.pivots.iter().enumerate() {
        x[pc] = CScalar::from_cpoly(&red.rows[r][ncols]).div(&det)?;
    }
    Ok((x, kernel(a, ncols, nvars)))
}

/// Inverse of a square matrix.
pub fn invert(a: &[Vec<CScalar>], nvars: usize) -> Result<Matrix, ScalarError> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(ScalarError::DimensionMismatch("matrix is not square".into()));
    }
    let aug: Vec<Vec<CScalar>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            for j in 0..n {
                r.push(if i == j { CScalar::one(nvars) } else { CScalar::zero(nvars) });
            }
            r
        })
        .collect();
    // Identity columns carry no denominators, so clearing a row scales the
    // identity block by the same factor; this is undone by the final
    // division through the pivot value.
    let red = reduce(to_poly_rows(&aug), 2 * n, n);
    if red.pivots.len() < n {
        return Err(ScalarError::SingularMatrix);
    }
    let det = CScalar::from_cpoly(&red.det);
    let mut inv = vec![vec![CScalar::zero(nvars); n]; n];
    for (r, &pc) in red.pivots.iter().enumerate() {
        for j in 0..n {
            inv[pc][j] = CScalar::from_cpoly(&red.rows[r][n + j]).div(&det)?;
        }
    }
    Ok(inv)
}

/// Rank of a matrix over Q(i).
pub fn rank_qi(mut m: Vec<Vec<QI>>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !Field::is_zero(&m[i][c])) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for j in c..ncols {
            m[r][j] = m[r][j].mul_ref(&inv);
        }
        for i in 0..nrows {
            if i != r && !Field::is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let t = f.mul_ref(&m[r][j]);
                    m[i][j] = m[i][j].sub_ref(&t);
                }
            }
        }
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}

/// Rank after evaluating every entry at a rational point.
pub fn rank_at(m: &[Vec<CScalar>], point: &[BigRational]) -> Result<usize, ScalarError> {
    let mut vals = Vec::with_capacity(m.len());
    for row in m {
        let mut r = Vec::with_capacity(row.len());
        for e in row {
            r.push(e.eval(point)?);
        }
        vals.push(r);
    }
    Ok(rank_qi(vals))
}

/// Matrix product.
pub fn matmul(a: &[Vec<CScalar>], b: &[Vec<CScalar>], nvars: usize) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = ncols_of(b);
    let mut out = vec![vec![CScalar::zero(nvars); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if b[l][j].is_zero() {
                    continue;
                }
                out[i][j] = &out[i][j] + &(&a[i][l] * &b[l][j]);
            }
        }
    }
    out
}

pub fn identity(n: usize, nvars: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { CScalar::one(nvars) } else { CScalar::zero(nvars) }).collect())
        .collect()
}

pub fn transpose(a: &[Vec<CScalar>]) -> Matrix {
    let n = a.len();
    let m = ncols_of(a);
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn is_zero_matrix(a: &[Vec<CScalar>]) -> bool {
    a.iter().all(|r| r.iter().all(|e| e.is_zero()))
}
