//! Complex structures on the gauge algebroid `DR_M`.

use std::sync::Arc;

use dj_atiyah::{random, GaugeEndo};
use dj_cartan::random::Shape;
use dj_cartan::Report;
use dj_scalar::{CScalar, Chart};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed of the tensoriality spot-check.
pub const SPOT_CHECK_SEED: u64 = 0x5eed;

fn frame_name(chart: &Arc<Chart>, i: usize) -> String {
    let names = chart.names();
    if i < names.len() {
        format!("d/d{}", names[i])
    } else {
        "one".into()
    }
}

/// `phi^2 = -1` and vanishing of the Nijenhuis torsion on the frame
/// `d/dx^i, 1`, with a randomized check that the torsion is
/// `C^infty`-bilinear.
pub fn check_dl_complex(phi: &GaugeEndo) -> Report {
    let chart = phi.chart().clone();
    let n = chart.dim();
    let names = chart.names();
    let mut rep = Report::new();
    let sq = phi.compose(phi).add(&GaugeEndo::identity(&chart));
    let almost = sq.is_zero();
    rep.record("phi^2 = -1", almost, || format!("phi^2 + 1 = {}", sq.render()));
    if !almost {
        rep.fail("N_phi = 0", "not checked: phi is not almost complex");
        return rep;
    }
    let nij = phi.nijenhuis();
    rep.record("N_phi = 0", nij.is_zero(), || {
        let (a, b, v) = nij.first_nonzero().expect("nonzero torsion");
        format!("N_phi({}, {}) = {}", frame_name(&chart, *a), frame_name(&chart, *b), v.render())
    });
    let mut rng = ChaCha8Rng::seed_from_u64(SPOT_CHECK_SEED);
    let shape = Shape::real(2, 3);
    let f = shape.scalar(&mut rng, n);
    let a = random::derivation(&mut rng, &chart, shape);
    let b = random::derivation(&mut rng, &chart, shape);
    let lhs = phi.nijenhuis_on(&a.scale(&f), &b);
    let rhs = phi.nijenhuis_on(&a, &b).scale(&f);
    let defect = lhs.sub(&rhs);
    rep.record("N_phi tensorial (spot check)", defect.is_zero(), || {
        format!("N_phi(f a, b) - f N_phi(a, b) = {} for f = {}", defect.render(), f.render(names))
    });
    rep
}

/// `phi_can`: `1 -> d/du`, `d/du -> -1`, `d/dx^i -> d/dy^i`,
/// `d/dy^i -> -d/dx^i` on the chart `(u, x^1, ..., x^n, y^1, ..., y^n)`.
pub fn phi_can_on(chart: &Arc<Chart>) -> GaugeEndo {
    let dim = chart.dim();
    assert!(dim % 2 == 1, "phi_can needs a chart (u, x.., y..)");
    let k = (dim - 1) / 2;
    let r = dim + 1;
    let mut m = vec![vec![CScalar::zero(dim); r]; r];
    m[0][dim] = CScalar::one(dim);
    m[dim][0] = CScalar::int(dim, -1);
    for i in 0..k {
        m[1 + k + i][1 + i] = CScalar::one(dim);
        m[1 + i][1 + k + i] = CScalar::int(dim, -1);
    }
    GaugeEndo::new(chart, m).expect("square matrix of the right size")
}
