//! Seeded randomized suites: bracket calculus, the Dolbeault-Atiyah solver
//! and homogenization of gauge complex structures.

use std::sync::Arc;

use dj_atiyah::random as arand;
use dj_atiyah::{homogenize_endo, AtiyahForm, Derivation, GaugeEndo, Jet};
use dj_cartan::random::Shape;
use dj_cartan::{Form, Report};
use dj_dolbeault::{dbar_d, dbar_d_solve, partial_d, HoloChart};
use dj_omni::OmniSection;
use dj_scalar::{CScalar, Chart};
use dj_structures::AcQuadruple;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::EvalResult;

pub fn default_count(which: &str) -> usize {
    match which {
        "bracket" => 100,
        "dolbeault" => 50,
        _ => 20,
    }
}

pub fn run(which: &str, count: usize, seed: u64) -> EvalResult<(Report, Vec<String>)> {
    match which {
        "bracket" => Ok(bracket(count, seed)),
        "dolbeault" => dolbeault(count, seed),
        _ => homogenization(count, seed),
    }
}

/// Tally of one identity over a family: number of cases and first failure.
struct Tally {
    name: String,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally { name: name.to_string(), cases: 0, failure: None }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    fn finish(self, rep: &mut Report) {
        let name = format!("{} ({} cases)", self.name, self.cases);
        match self.failure {
            None => rep.pass(name),
            Some(w) => rep.fail(name, w),
        }
    }
}

fn numbered_chart(dim: usize) -> Arc<Chart> {
    let names: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
    Chart::new(&names).expect("distinct names")
}

const COMPLEX: Shape = Shape { degree: 2, terms: 2, complex: true };
const REAL: Shape = Shape { degree: 2, terms: 2, complex: false };

fn section(r: &mut ChaCha8Rng, c: &Arc<Chart>) -> OmniSection {
    OmniSection::new(arand::derivation(r, c, COMPLEX), arand::jet(r, c, COMPLEX))
}

/// Dorfman Jacobi identity, pairing invariance under arbitrary B-fields and
/// bracket invariance under closed ones, on `count` random triples of
/// sections over charts of dimension one to four.
fn bracket(count: usize, seed: u64) -> (Report, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jacobi = Tally::new("Dorfman bracket satisfies the Jacobi identity");
    let mut pairing = Tally::new("pairing is invariant under arbitrary B-fields");
    let mut closed = Tally::new("bracket is invariant under closed B-fields");
    for i in 0..count {
        let c = numbered_chart(1 + i % 4);
        let (a, b, g) = (section(&mut rng, &c), section(&mut rng, &c), section(&mut rng, &c));
        let lhs = a.dorfman(&b.dorfman(&g));
        let rhs = a.dorfman(&b).dorfman(&g).add(&b.dorfman(&a.dorfman(&g)));
        jacobi.check(lhs == rhs, || format!("[[a, [[b, c]]]] - [[[[a, b]], c]] - [[b, [[a, c]]]] = {}", lhs.sub(&rhs).render()));

        let any_b = arand::form(&mut rng, &c, 2, 2, COMPLEX);
        let (ea, eb) = (a.bfield_unchecked(&any_b), b.bfield_unchecked(&any_b));
        let (p1, p0) = (ea.pair(&eb), a.pair(&b));
        pairing.check(p1 == p0, || format!("<<e^B a, e^B b>> - <<a, b>> = {}", (&p1 - &p0).render(c.names())));

        let closed_b = arand::form(&mut rng, &c, 1, 2, REAL).d();
        let lhs = a.bfield_unchecked(&closed_b).dorfman(&b.bfield_unchecked(&closed_b));
        let rhs = a.dorfman(&b).bfield_unchecked(&closed_b);
        closed.check(lhs == rhs, || format!("[[e^B a, e^B b]] - e^B [[a, b]] = {}", lhs.sub(&rhs).render()));
    }
    let mut rep = Report::new();
    jacobi.finish(&mut rep);
    pairing.finish(&mut rep);
    closed.finish(&mut rep);

    // Stored witness: x du ^ dp on (x, p, u) is not closed and breaks the
    // bracket on d/dx and d/du.
    let c = Chart::new(&["x", "p", "u"]).expect("distinct names");
    let open = AtiyahForm::embed(&Form::basis(&c, &[2, 1]).scale(&CScalar::var(3, 0)));
    let x = OmniSection::derivation(Derivation::coordinate(&c, 0));
    let u = OmniSection::derivation(Derivation::coordinate(&c, 2));
    let defect = x.bfield_unchecked(&open).dorfman(&u.bfield_unchecked(&open)).sub(&x.dorfman(&u).bfield_unchecked(&open));
    rep.record("non-closed B = x*du^dp breaks bracket invariance", !defect.is_zero(), || "defect vanished".into());
    let summary = vec![
        format!("sections = {}", 3 * count),
        format!("d_D B = {}", open.d().render()),
        format!("defect on (d/dx, d/du) = {}", defect.render()),
    ];
    (rep, summary)
}

/// Round trip of the solver, `dbar_D^2 = 0` and `d_D = partial_D + dbar_D`
/// on `count` random Atiyah forms over `R x C^n`, `n <= 2`, of form degree
/// at most three with coefficients of degree at most three.
fn dolbeault(count: usize, seed: u64) -> EvalResult<(Report, Vec<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let holo = [HoloChart::new(1)?, HoloChart::new(2)?];
    let mut round = Tally::new("dbar_D(dbar_D_solve(dbar_D rho)) = dbar_D rho");
    let mut square = Tally::new("dbar_D^2 = 0");
    let mut split = Tally::new("d_D = partial_D + dbar_D");
    for i in 0..count {
        let h = &holo[i % 2];
        let k = (i / 2) % 4;
        let shape = Shape { degree: 1 + (i % 3) as u32, terms: 2, complex: true };
        let rho = arand::form(&mut rng, h.chart(), k, 2, shape);
        let beta = dbar_d(h, &rho)?;
        let sol = dbar_d_solve(h, &beta)?;
        let back = dbar_d(h, &sol)?;
        round.check(back == beta, || format!("rho = {}, residual = {}", rho.render(), back.sub(&beta).render()));
        let sq = dbar_d(h, &beta)?;
        square.check(sq.is_zero(), || format!("rho = {}, dbar_D^2 rho = {}", rho.render(), sq.render()));
        let total = partial_d(h, &rho)?.add(&beta);
        let d = rho.d();
        split.check(total == d, || format!("rho = {}, defect = {}", rho.render(), d.sub(&total).render()));
    }
    let mut rep = Report::new();
    round.finish(&mut rep);
    square.finish(&mut rep);
    split.finish(&mut rep);
    Ok((rep, vec![format!("forms = {count}")]))
}

/// Random polynomial of degree at most two in the coordinates other than
/// the first one, `u`.
fn transverse_poly(rng: &mut ChaCha8Rng, n: usize) -> CScalar {
    let mut f = CScalar::zero(n);
    for _ in 0..3 {
        let mut term = CScalar::int(n, rng.gen_range(-3..=3));
        for _ in 0..rng.gen_range(1..=2) {
            term = &term * &CScalar::var(n, rng.gen_range(1..n));
        }
        f = &f + &term;
    }
    f
}

/// Gauge endomorphism of a normal almost contact structure, optionally
/// twisted by the nilpotent conjugation `(1 + N) phi (1 - N)`.
fn nacs_phi(rng: &mut ChaCha8Rng, c: &Arc<Chart>, twist: bool) -> GaugeEndo {
    let n = c.dim();
    let f = transverse_poly(rng, n);
    let mut t = AcQuadruple::normal_form(c, &f);
    if rng.gen_bool(0.5) {
        t = t.gauge_transform(&REAL.scalar(rng, n));
    }
    let phi = t.to_phi();
    if !twist {
        return phi;
    }
    let a = rng.gen_range(0..n);
    let b = (a + 1 + rng.gen_range(0..n - 1)) % n;
    let coeff = &CScalar::var(n, rng.gen_range(0..n)) + &REAL.scalar(rng, n);
    let nil = GaugeEndo::tensor(&Jet::coordinate(c, b), &Derivation::coordinate(c, a).scale(&coeff));
    let id = GaugeEndo::identity(c);
    id.add(&nil).compose(&phi).compose(&id.sub(&nil))
}

/// Integrability of `phi` against integrability of its homogenization on
/// `count` random gauge complex structures built from almost contact data.
fn homogenization(count: usize, seed: u64) -> EvalResult<(Report, Vec<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let charts = [Chart::new(&["u", "x", "y"])?, Chart::new(&["u", "x1", "x2", "y1", "y2"])?];
    let mut square = Tally::new("phi^2 = -1");
    let mut agree = Tally::new("N_phi = 0 iff the homogenized Nijenhuis torsion vanishes");
    let (mut integrable, mut torsion) = (0usize, 0usize);
    for i in 0..count {
        let c = &charts[if i % 4 == 3 { 1 } else { 0 }];
        let phi = nacs_phi(&mut rng, c, i % 2 == 1);
        square.check(phi.is_almost_complex(), || format!("phi = {}", phi.render()));
        let gauge_ok = phi.nijenhuis().is_zero();
        let lifted_ok = homogenize_endo(&phi)?.nijenhuis().is_zero();
        agree.check(gauge_ok == lifted_ok, || format!("phi = {}, N_phi = 0: {gauge_ok}, lifted: {lifted_ok}", phi.render()));
        if gauge_ok {
            integrable += 1;
        } else {
            torsion += 1;
        }
    }
    let mut rep = Report::new();
    square.finish(&mut rep);
    agree.finish(&mut rep);
    rep.record("family contains integrable structures", integrable > 0, || "none".into());
    rep.record("family contains non-integrable structures", torsion > 0, || "none".into());
    Ok((rep, vec![format!("integrable = {integrable}"), format!("non-integrable = {torsion}")]))
}
