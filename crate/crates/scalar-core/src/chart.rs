use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::ScalarError;

/// Ordered list of real coordinate names.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chart {
    names: Vec<String>,
}

impl Chart {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Chart>, ScalarError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(ScalarError::ChartMismatch("a chart needs at least one coordinate".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(ScalarError::ChartMismatch(format!("duplicate coordinate `{a}`")));
            }
        }
        Ok(Arc::new(Chart { names }))
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize, ScalarError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ScalarError::UnknownCoordinate(name.to_string()))
    }

    /// Concatenated chart, or `None` if the name sets overlap.
    pub fn product(a: &Chart, b: &Chart) -> Option<Arc<Chart>> {
        if a.names.iter().any(|n| b.names.contains(n)) {
            return None;
        }
        let mut names = a.names.clone();
        names.extend(b.names.iter().cloned());
        Some(Arc::new(Chart { names }))
    }

    /// Chart with one extra trailing coordinate, or `None` on a name clash.
    pub fn extended(&self, extra: &str) -> Option<Arc<Chart>> {
        if self.names.iter().any(|n| n == extra) {
            return None;
        }
        let mut names = self.names.clone();
        names.push(extra.to_string());
        Some(Arc::new(Chart { names }))
    }
}

/// Substitute rational values for some coordinates. Returns the result on
/// the chart of the remaining coordinates (in their original order).
pub fn substitute(
    f: &crate::CScalar,
    chart: &Chart,
    bindings: &[(String, BigRational)],
) -> Result<(crate::CScalar, Arc<Chart>), ScalarError> {
    let kept = chart.dim() - bindings.len();
    let polys: Vec<(String, crate::Poly)> =
        bindings.iter().map(|(n, q)| (n.clone(), crate::Poly::constant(kept, q.clone()))).collect();
    substitute_polys(f, chart, &polys)
}

/// Substitute polynomials in the surviving coordinates for some
/// coordinates. Each image lives on the reduced chart.
pub fn substitute_polys(
    f: &crate::CScalar,
    chart: &Chart,
    bindings: &[(String, crate::Poly)],
) -> Result<(crate::CScalar, Arc<Chart>), ScalarError> {
    let mut fixed: Vec<Option<crate::Poly>> = vec![None; chart.dim()];
    for (name, v) in bindings {
        fixed[chart.index_of(name)?] = Some(v.clone());
    }
    let kept: Vec<String> = chart
        .names()
        .iter()
        .zip(&fixed)
        .filter(|(_, v)| v.is_none())
        .map(|(n, _)| n.clone())
        .collect();
    let new_n = kept.len();
    let mut images = Vec::with_capacity(chart.dim());
    let mut next = 0;
    for v in &fixed {
        images.push(match v {
            Some(p) => {
                if p.nvars() != new_n {
                    return Err(ScalarError::DimensionMismatch("substituted polynomial must live on the reduced chart".into()));
                }
                p.clone()
            }
            None => {
                next += 1;
                crate::Poly::var(new_n, next - 1)
            }
        });
    }
    let out = f.substitute(&images, new_n)?;
    Ok((out, Chart::new(&kept)?))
}

/// A point with rational coordinates, in chart order.
pub type SamplePoint = Vec<BigRational>;

/// Default evaluation points: the origin followed by `extra` pseudo-random
/// rational points from a fixed seed.
pub fn default_samples(dim: usize, extra: usize, seed: u64) -> Vec<SamplePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![vec![BigRational::from_integer(BigInt::from(0)); dim]];
    for _ in 0..extra {
        out.push(
            (0..dim)
                .map(|_| {
                    let n: i64 = rng.gen_range(-7..=7);
                    let d: i64 = rng.gen_range(1..=4);
                    BigRational::new(BigInt::from(n), BigInt::from(d))
                })
                .collect(),
        );
    }
    out
}

/// Seed used when callers do not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_1234;
