use std::sync::Arc;

use dj_scalar::{q, qi, CPoly, CScalar, Chart, Poly, QI};

use crate::error::{DolbeaultError, DolbeaultResult};

/// Chart `(u, x^1, ..., x^n, y^1, ..., y^n)` on `R x C^n` with complex
/// coordinates `z^i = x^i + i y^i`.
///
/// Scalars are stored on the real chart. The holomorphic representation
/// is a polynomial in `(u, z^1, ..., z^n, zb^1, ..., zb^n)` with the same
/// number of variables, so `d/dzb^i` is an ordinary partial derivative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoloChart {
    n: usize,
    chart: Arc<Chart>,
    zchart: Arc<Chart>,
}

fn block_names(prefix: &str, n: usize) -> Vec<String> {
    if n == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }
}

fn c(re: (i64, i64), im: (i64, i64)) -> QI {
    qi(q(re.0, re.1), q(im.0, im.1))
}

impl HoloChart {
    pub fn new(n: usize) -> DolbeaultResult<Self> {
        if n == 0 {
            return Err(DolbeaultError::NotHoloChart("need at least one complex coordinate".into()));
        }
        let mut names = vec!["u".to_string()];
        names.extend(block_names("x", n));
        names.extend(block_names("y", n));
        Self::from_chart(&Chart::new(&names).expect("distinct names"))
    }

    /// Interpret an odd-dimensional chart as `(u, x.., y..)` in that order.
    pub fn from_chart(chart: &Arc<Chart>) -> DolbeaultResult<Self> {
        let dim = chart.dim();
        if dim < 3 || dim % 2 == 0 {
            return Err(DolbeaultError::NotHoloChart(format!(
                "({}) has dimension {dim}; expected (u, x.., y..) of odd dimension at least 3",
                chart.names().join(", ")
            )));
        }
        let n = (dim - 1) / 2;
        let mut znames = vec![chart.names()[0].clone()];
        znames.extend(block_names("z", n));
        znames.extend(block_names("zb", n));
        let zchart = Chart::new(&znames).map_err(|e| DolbeaultError::NotHoloChart(e.to_string()))?;
        Ok(HoloChart { n, chart: chart.clone(), zchart })
    }

    /// Number of complex coordinates.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    /// Chart naming the holomorphic variables `(u, z.., zb..)`.
    pub fn zchart(&self) -> &Arc<Chart> {
        &self.zchart
    }

    pub fn nvars(&self) -> usize {
        2 * self.n + 1
    }

    pub fn u_var(&self) -> usize {
        0
    }

    pub fn z_var(&self, i: usize) -> usize {
        1 + i
    }

    pub fn zb_var(&self, i: usize) -> usize {
        1 + self.n + i
    }

    pub fn ensure_on(&self, chart: &Arc<Chart>) -> DolbeaultResult<()> {
        if chart == &self.chart {
            Ok(())
        } else {
            Err(DolbeaultError::NotHoloChart(format!(
                "({}) is not ({})",
                chart.names().join(", "),
                self.chart.names().join(", ")
            )))
        }
    }

    fn real_to_complex(&self, p: &Poly) -> CPoly {
        let nv = self.nvars();
        let cp: CPoly = p.map_coeffs(|r| qi(r.clone(), q(0, 1)));
        let mut images = vec![CPoly::var(nv, 0)];
        for i in 0..self.n {
            // x = (z + zb) / 2
            images.push(CPoly::var(nv, self.z_var(i)).add(&CPoly::var(nv, self.zb_var(i))).scale(&c((1, 2), (0, 1))));
        }
        for i in 0..self.n {
            // y = -(i/2) (z - zb)
            images.push(CPoly::var(nv, self.z_var(i)).sub(&CPoly::var(nv, self.zb_var(i))).scale(&c((0, 1), (-1, 2))));
        }
        cp.substitute(&images, nv)
    }

    /// Holomorphic representation of a polynomial scalar.
    pub fn to_z(&self, f: &CScalar) -> DolbeaultResult<CPoly> {
        if !f.is_polynomial() {
            return Err(DolbeaultError::NotPolynomial(f.render(self.chart.names())));
        }
        let re = self.real_to_complex(f.re.num());
        let im = self.real_to_complex(f.im.num());
        Ok(re.add(&im.scale(&c((0, 1), (1, 1)))))
    }

    /// Real-chart scalar of a polynomial in `(u, z, zb)`.
    pub fn from_z(&self, p: &CPoly) -> CScalar {
        let nv = self.nvars();
        let mut images = vec![CPoly::var(nv, 0)];
        for i in 0..self.n {
            let (x, y) = (CPoly::var(nv, 1 + i), CPoly::var(nv, 1 + self.n + i));
            images.push(x.add(&y.scale(&c((0, 1), (1, 1)))));
        }
        for i in 0..self.n {
            let (x, y) = (CPoly::var(nv, 1 + i), CPoly::var(nv, 1 + self.n + i));
            images.push(x.sub(&y.scale(&c((0, 1), (1, 1)))));
        }
        CScalar::from_cpoly(&p.substitute(&images, nv))
    }

    /// `d/dz^i` of a real-chart scalar, computed as `(d/dx - i d/dy) / 2`.
    pub fn d_z(&self, f: &CScalar, i: usize) -> CScalar {
        let half = CScalar::rational(self.nvars(), q(1, 2));
        &(&f.derivative(1 + i) - &f.derivative(1 + self.n + i).times_i()) * &half
    }

    /// `d/dzb^i` of a real-chart scalar, computed as `(d/dx + i d/dy) / 2`.
    pub fn d_zb(&self, f: &CScalar, i: usize) -> CScalar {
        let half = CScalar::rational(self.nvars(), q(1, 2));
        &(&f.derivative(1 + i) + &f.derivative(1 + self.n + i).times_i()) * &half
    }

    /// Complex coordinate `z^i` as a real-chart scalar.
    pub fn z(&self, i: usize) -> CScalar {
        let nv = self.nvars();
        &CScalar::var(nv, 1 + i) + &CScalar::var(nv, 1 + self.n + i).times_i()
    }

    /// Conjugate coordinate `zb^i` as a real-chart scalar.
    pub fn zb(&self, i: usize) -> CScalar {
        self.z(i).conj()
    }

    pub fn render_z(&self, p: &CPoly) -> String {
        p.render(self.zchart.names())
    }
}

pub(crate) fn qconst(re: (i64, i64), im: (i64, i64)) -> QI {
    c(re, im)
}
