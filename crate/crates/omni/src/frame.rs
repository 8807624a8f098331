use std::sync::Arc;

use dj_atiyah::{AtiyahForm, Derivation, Jet};
use dj_cartan::ensure_same_chart;
use dj_scalar::{default_samples, linalg, Chart, Rational, SamplePoint, DEFAULT_SEED};

use crate::error::OmniResult;
use crate::section::OmniSection;

/// Number of pseudo-random sample points added to the origin by default.
pub const DEFAULT_EXTRA_SAMPLES: usize = 3;

/// Finite list of generators of a (complex) subbundle of `DL + J^1 L`,
/// together with the sample points at which pointwise ranks are checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    chart: Arc<Chart>,
    generators: Vec<OmniSection>,
    samples: Vec<SamplePoint>,
}

pub fn render_point(chart: &Chart, p: &[Rational]) -> String {
    let parts: Vec<String> = chart.names().iter().zip(p).map(|(n, v)| format!("{n}={v}")).collect();
    format!("({})", parts.join(", "))
}

impl Frame {
    pub fn new(chart: &Arc<Chart>, generators: Vec<OmniSection>) -> Self {
        for g in &generators {
            assert!(g.chart() == chart, "generator on a different chart");
        }
        Frame {
            chart: chart.clone(),
            generators,
            samples: default_samples(chart.dim(), DEFAULT_EXTRA_SAMPLES, DEFAULT_SEED),
        }
    }

    pub fn with_samples(mut self, samples: Vec<SamplePoint>) -> Self {
        assert!(samples.iter().all(|p| p.len() == self.chart.dim()), "sample point of wrong dimension");
        self.samples = samples;
        self
    }

    /// `DR_M = {(Delta, 0)}`, the graph of the zero Atiyah 2-form.
    pub fn derivations(chart: &Arc<Chart>) -> Self {
        Frame::new(chart, Derivation::frame(chart).into_iter().map(OmniSection::derivation).collect())
    }

    /// The jet summand `{(0, psi)}`.
    pub fn jets(chart: &Arc<Chart>) -> Self {
        Frame::new(chart, Jet::coframe(chart).into_iter().map(OmniSection::jet).collect())
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn generators(&self) -> &[OmniSection] {
        &self.generators
    }

    pub fn samples(&self) -> &[SamplePoint] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Component matrix: one column per generator, `2 (dim + 1)` rows.
    pub fn matrix(&self) -> Vec<Vec<dj_scalar::CScalar>> {
        columns_to_matrix(&self.generators.iter().map(|g| g.components()).collect::<Vec<_>>(), 2 * (self.dim() + 1))
    }

    /// Matrix of the derivation parts, `dim + 1` rows.
    pub fn derivation_matrix(&self) -> Vec<Vec<dj_scalar::CScalar>> {
        columns_to_matrix(&self.generators.iter().map(|g| g.d.components()).collect::<Vec<_>>(), self.dim() + 1)
    }

    /// Generic rank over the field of rational functions.
    pub fn rank(&self) -> usize {
        if self.generators.is_empty() {
            return 0;
        }
        linalg::rank(&self.matrix())
    }

    /// Rank at a point, computed from polynomial generators.
    pub fn rank_at(&self, p: &[Rational]) -> OmniResult<usize> {
        if self.generators.is_empty() {
            return Ok(0);
        }
        Ok(linalg::rank_at(&self.normalized().matrix(), p)?)
    }

    /// First sample point where the pointwise rank differs from `expected`.
    pub fn rank_defect_point(&self, expected: usize) -> OmniResult<Option<String>> {
        let norm = self.normalized();
        for p in &self.samples {
            if norm.rank_at(p)? != expected {
                return Ok(Some(render_point(&self.chart, p)));
            }
        }
        Ok(None)
    }

    /// Same span with polynomial, content-free generators.
    pub fn normalized(&self) -> Frame {
        let gens = self
            .generators
            .iter()
            .map(|g| OmniSection::from_components(&self.chart, &linalg::primitive_row(&g.components())))
            .collect();
        Frame { chart: self.chart.clone(), generators: gens, samples: self.samples.clone() }
    }

    /// Drop generators that are generically dependent on earlier ones and
    /// normalize the rest.
    pub fn reduced(&self) -> Frame {
        let norm = self.normalized();
        if norm.generators.is_empty() {
            return norm;
        }
        let keep = linalg::independent_columns(&norm.matrix());
        let gens = keep.into_iter().map(|i| norm.generators[i].clone()).collect();
        Frame { chart: self.chart.clone(), generators: gens, samples: self.samples.clone() }
    }

    pub fn map(&self, f: impl Fn(&OmniSection) -> OmniSection) -> Frame {
        Frame { chart: self.chart.clone(), generators: self.generators.iter().map(f).collect(), samples: self.samples.clone() }
    }

    /// Complex conjugate frame.
    pub fn conj(&self) -> Frame {
        self.map(|g| g.conj())
    }

    /// B-field transform of every generator. Unless `allow_open` is set,
    /// `B` must be `d_D`-closed.
    pub fn bfield(&self, b: &AtiyahForm, allow_open: bool) -> OmniResult<Frame> {
        ensure_same_chart(&self.chart, b.chart())?;
        let gens = self
            .generators
            .iter()
            .map(|g| crate::section::bfield(b, g, allow_open))
            .collect::<OmniResult<Vec<_>>>()?;
        Ok(Frame { chart: self.chart.clone(), generators: gens, samples: self.samples.clone() })
    }

    /// Generators of the intersection with the conjugate frame, computed
    /// from the kernel of `[G | -conj G]`. Real sections appear up to a
    /// complex factor.
    pub fn intersect_conj(&self) -> Vec<OmniSection> {
        let red = self.reduced();
        let m = red.len();
        if m == 0 {
            return Vec::new();
        }
        let nv = self.dim();
        let g = red.matrix();
        let block: Vec<Vec<dj_scalar::CScalar>> = g
            .iter()
            .map(|row| row.iter().cloned().chain(row.iter().map(|c| -&c.conj())).collect())
            .collect();
        let ker = linalg::kernel(&block, 2 * m, nv);
        ker.iter()
            .map(|c| {
                red.generators
                    .iter()
                    .zip(c.iter())
                    .fold(OmniSection::zero(&self.chart), |acc, (gen, ci)| acc.add(&gen.scale(ci)))
            })
            .filter(|s| !s.is_zero())
            .collect()
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.generators.iter().map(|g| g.render()).collect();
        format!("span({})", parts.join(", "))
    }
}

pub(crate) fn columns_to_matrix(cols: &[Vec<dj_scalar::CScalar>], rows: usize) -> Vec<Vec<dj_scalar::CScalar>> {
    (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Equality of spans: equal generic ranks of both frames and of their union,
/// and likewise at every sample point of the first frame.
pub fn frame_equal(a: &Frame, b: &Frame) -> OmniResult<bool> {
    ensure_same_chart(&a.chart, &b.chart)?;
    let union = Frame {
        chart: a.chart.clone(),
        generators: a.generators.iter().chain(&b.generators).cloned().collect(),
        samples: a.samples.clone(),
    };
    let (ra, rb, ru) = (a.rank(), b.rank(), union.rank());
    if ra != rb || ra != ru {
        return Ok(false);
    }
    let (na, nb, nu) = (a.normalized(), b.normalized(), union.normalized());
    for p in &a.samples {
        let pa = na.rank_at(p)?;
        if pa != nb.rank_at(p)? || pa != nu.rank_at(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

