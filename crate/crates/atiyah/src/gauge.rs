use std::sync::Arc;

use dj_cartan::{ensure_same_chart, GeomError, GeomResult};
use dj_scalar::{linalg, CScalar, Chart};

use crate::derivation::{Derivation, Jet};

/// Endomorphism of the bundle of derivations, stored as a matrix in the
/// frame `d/dx^1, ..., d/dx^n, 1`: column `j` is the image of frame element
/// `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeEndo {
    chart: Arc<Chart>,
    m: Vec<Vec<CScalar>>,
}

/// Values `N_phi(e_a, e_b)` on frame pairs `a < b`.
#[derive(Clone, Debug)]
pub struct GaugeNijenhuis {
    pub entries: Vec<(usize, usize, Derivation)>,
}

impl GaugeNijenhuis {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|(_, _, v)| v.is_zero())
    }

    pub fn first_nonzero(&self) -> Option<&(usize, usize, Derivation)> {
        self.entries.iter().find(|(_, _, v)| !v.is_zero())
    }
}

impl GaugeEndo {
    pub fn new(chart: &Arc<Chart>, m: Vec<Vec<CScalar>>) -> GeomResult<Self> {
        let r = chart.dim() + 1;
        if m.len() != r || m.iter().any(|row| row.len() != r) {
            return Err(GeomError::DimensionMismatch(format!("gauge endomorphism needs a {r}x{r} matrix")));
        }
        Ok(GaugeEndo { chart: chart.clone(), m })
    }

    /// Endomorphism given by the images of the frame elements.
    pub fn from_images(chart: &Arc<Chart>, images: &[Derivation]) -> GeomResult<Self> {
        let r = chart.dim() + 1;
        if images.len() != r {
            return Err(GeomError::DimensionMismatch(format!("expected {r} images")));
        }
        for im in images {
            ensure_same_chart(chart, im.chart())?;
        }
        let cols: Vec<Vec<CScalar>> = images.iter().map(|d| d.components()).collect();
        Ok(GaugeEndo { chart: chart.clone(), m: (0..r).map(|i| (0..r).map(|j| cols[j][i].clone()).collect()).collect() })
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        let r = chart.dim() + 1;
        GaugeEndo { chart: chart.clone(), m: vec![vec![CScalar::zero(chart.dim()); r]; r] }
    }

    pub fn identity(chart: &Arc<Chart>) -> Self {
        GaugeEndo { chart: chart.clone(), m: linalg::identity(chart.dim() + 1, chart.dim()) }
    }

    /// Rank-one endomorphism `Delta -> <psi, Delta> v`.
    pub fn tensor(psi: &Jet, v: &Derivation) -> Self {
        let a = psi.components();
        let b = v.components();
        GaugeEndo { chart: psi.chart().clone(), m: b.iter().map(|bi| a.iter().map(|aj| bi * aj).collect()).collect() }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn matrix(&self) -> &[Vec<CScalar>] {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_matrix(&self.m)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert!(self.chart == o.chart, "chart mismatch");
        let m = self.m.iter().zip(&o.m).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        GaugeEndo { chart: self.chart.clone(), m }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&CScalar::int(self.chart.dim(), -1)))
    }

    pub fn scale(&self, s: &CScalar) -> Self {
        GaugeEndo { chart: self.chart.clone(), m: self.m.iter().map(|r| r.iter().map(|c| c * s).collect()).collect() }
    }

    pub fn compose(&self, o: &Self) -> Self {
        assert!(self.chart == o.chart, "chart mismatch");
        GaugeEndo { chart: self.chart.clone(), m: linalg::matmul(&self.m, &o.m, self.chart.dim()) }
    }

    pub fn apply(&self, d: &Derivation) -> Derivation {
        assert!(&self.chart == d.chart(), "chart mismatch");
        let v = d.components();
        let out: Vec<CScalar> = self
            .m
            .iter()
            .map(|row| row.iter().zip(&v).fold(CScalar::zero(self.chart.dim()), |acc, (a, b)| &acc + &(a * b)))
            .collect();
        Derivation::from_components(&self.chart, &out)
    }

    /// Transpose action on jets: `<phi^* psi, Delta> = <psi, phi Delta>`.
    pub fn dual_apply(&self, psi: &Jet) -> Jet {
        assert!(&self.chart == psi.chart(), "chart mismatch");
        let a = psi.components();
        let r = a.len();
        let out: Vec<CScalar> = (0..r)
            .map(|j| (0..r).fold(CScalar::zero(self.chart.dim()), |acc, i| &acc + &(&a[i] * &self.m[i][j])))
            .collect();
        Jet::from_components(&self.chart, &out)
    }

    /// `N(D, E) = [phi D, phi E] - [D, E] - phi([phi D, E] + [D, phi E])`.
    pub fn nijenhuis_on(&self, a: &Derivation, b: &Derivation) -> Derivation {
        let pa = self.apply(a);
        let pb = self.apply(b);
        let mixed = pa.bracket(b).add(&a.bracket(&pb));
        pa.bracket(&pb).sub(&a.bracket(b)).sub(&self.apply(&mixed))
    }

    pub fn nijenhuis(&self) -> GaugeNijenhuis {
        let frame = Derivation::frame(&self.chart);
        let mut entries = Vec::new();
        for a in 0..frame.len() {
            for b in (a + 1)..frame.len() {
                entries.push((a, b, self.nijenhuis_on(&frame[a], &frame[b])));
            }
        }
        GaugeNijenhuis { entries }
    }

    /// `phi^2 = -1`.
    pub fn is_almost_complex(&self) -> bool {
        self.compose(self).add(&Self::identity(&self.chart)).is_zero()
    }

    pub fn render(&self) -> String {
        let names = self.chart.names();
        let n = names.len();
        let co = |j: usize| if j < n { format!("d{}", names[j]) } else { "j".to_string() };
        let vec = |i: usize| if i < n { format!("d/d{}", names[i]) } else { "one".to_string() };
        let mut parts = Vec::new();
        for (i, row) in self.m.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let b = format!("{}*{}", co(j), vec(i));
                parts.push(if c.is_one() { b } else { format!("({})*{}", c.render(names), b) });
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
