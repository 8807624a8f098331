use std::sync::Arc;

use dj_atiyah::random as arand;
use dj_atiyah::{AtiyahForm, Derivation, Jet};
use dj_cartan::random::Shape;
use dj_cartan::{Form, Multivector, VectorField};
use dj_omni::*;
use dj_scalar::{CScalar, Chart};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn chart3() -> Arc<Chart> {
    Chart::new(&["x", "p", "u"]).unwrap()
}

fn var(c: &Arc<Chart>, i: usize) -> CScalar {
    CScalar::var(c.dim(), i)
}

fn int(c: &Arc<Chart>, v: i64) -> CScalar {
    CScalar::int(c.dim(), v)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const SHAPE: Shape = Shape { degree: 2, terms: 2, complex: true };
const REAL: Shape = Shape { degree: 2, terms: 2, complex: false };

fn section(r: &mut ChaCha8Rng, c: &Arc<Chart>) -> OmniSection {
    OmniSection::new(arand::derivation(r, c, SHAPE), arand::jet(r, c, SHAPE))
}

fn mv(c: &Arc<Chart>, i: usize) -> Multivector {
    VectorField::basis(c, i).to_multivector()
}

/// Lambda = d/dp ^ (d/dx + p d/du), E = d/du on (x, p, u).
fn j_can(c: &Arc<Chart>) -> (Multivector, VectorField) {
    let lam = mv(c, 1).wedge(&mv(c, 0).add(&mv(c, 2).scale(&var(c, 1))));
    (lam, VectorField::basis(c, 2))
}

fn theta_can(c: &Arc<Chart>) -> Form {
    Form::basis(c, &[2]).sub(&Form::basis(c, &[0]).scale(&var(c, 1)))
}

fn omega_can(c: &Arc<Chart>) -> AtiyahForm {
    AtiyahForm::embed(&theta_can(c)).d()
}

/// x du ^ dp, not d_D-closed.
fn open_b(c: &Arc<Chart>) -> AtiyahForm {
    AtiyahForm::embed(&Form::basis(c, &[2, 1]).scale(&var(c, 0)))
}

fn closed_b(r: &mut ChaCha8Rng, c: &Arc<Chart>) -> AtiyahForm {
    arand::form(r, c, 1, 2, REAL).d()
}

#[test]
fn pairing_examples() {
    let c = chart3();
    let a = OmniSection::new(
        Derivation::coordinate(&c, 0).add(&Derivation::one(&c)),
        Jet::coordinate(&c, 1).add(&Jet::j(&c).scale(&int(&c, 2))),
    );
    let b = OmniSection::new(Derivation::coordinate(&c, 1), Jet::coordinate(&c, 0));
    assert_eq!(omni_pair(&a, &b).unwrap(), int(&c, 2));
    let s = OmniSection::new(Derivation::coordinate(&c, 0), Jet::coordinate(&c, 0));
    assert_eq!(omni_pair(&s, &s).unwrap(), int(&c, 2));
    let one = OmniSection::derivation(Derivation::one(&c));
    assert!(omni_pair(&one, &OmniSection::jet(Jet::j(&c))).unwrap().is_one());
}

#[test]
fn dorfman_examples() {
    let c = chart3();
    let dx = OmniSection::derivation(Derivation::coordinate(&c, 0));
    let dp = OmniSection::derivation(Derivation::coordinate(&c, 1));
    assert!(dorfman(&dx, &dp).unwrap().is_zero());
    let psi = Jet::coordinate(&c, 1).scale(&var(&c, 0)).add(&Jet::j(&c).scale(&var(&c, 2)));
    let one = OmniSection::derivation(Derivation::one(&c));
    assert_eq!(dorfman(&one, &OmniSection::jet(psi.clone())).unwrap(), OmniSection::jet(psi));
    // [[a, a]] = (0, j^1 <psi, Delta>); here <dx, d/dx> = 1 so the result is j.
    let s = OmniSection::new(Derivation::coordinate(&c, 0), Jet::coordinate(&c, 0));
    assert_eq!(dorfman(&s, &s).unwrap(), OmniSection::jet(Jet::j(&c)));
}

#[test]
fn dorfman_matches_trivial_bundle_expansion() {
    // Independent expansion of the bracket in coordinates.
    let c = chart3();
    let mut r = rng(11);
    for _ in 0..10 {
        let a = section(&mut r, &c);
        let b = section(&mut r, &c);
        let (x1, f1, e1, g1) = (&a.d.x, &a.d.f, &a.psi.eta, &a.psi.g);
        let (x2, f2, e2, g2) = (&b.d.x, &b.d.f, &b.psi.eta, &b.psi.g);
        let dv = Derivation::new(x1.bracket(x2), &x1.apply(f2) - &x2.apply(f1));
        let df1 = dj_cartan::df(f1, &c);
        let dg1 = dj_cartan::df(g1, &c);
        let eta = dj_cartan::lie_form(x1, e2)
            .sub(&dj_cartan::interior(x2, &dj_cartan::d(e1)))
            .add(&e2.scale(f1))
            .add(&df1.scale(g2))
            .add(&dg1.scale(f2))
            .sub(&e1.scale(f2));
        let g = &(&(&x1.apply(g2) - &x2.apply(g1)) + &(f1 * g2)) + &x2.pair(e1);
        assert_eq!(a.dorfman(&b), OmniSection::new(dv, Jet::new(eta, g)));
    }
}

#[test]
fn bfield_examples() {
    let c = chart3();
    let one = OmniSection::derivation(Derivation::one(&c));
    let out = bfield(&omega_can(&c), &one, false).unwrap();
    assert_eq!(out, OmniSection::new(Derivation::one(&c), Jet::new(theta_can(&c), CScalar::zero(3))));
    let mut r = rng(3);
    let a = section(&mut r, &c);
    assert_eq!(bfield(&AtiyahForm::zero(&c, 2), &a, false).unwrap(), a);
    assert!(matches!(bfield(&open_b(&c), &a, false), Err(OmniError::NotClosed(_))));
    assert!(bfield(&open_b(&c), &a, true).is_ok());
}

#[test]
fn isotropy_and_involutivity() {
    let c = chart3();
    let (lam, e) = j_can(&c);
    let g = graph_jacobi(&lam, &e);
    assert!(check_isotropic(&g).passed());
    assert!(check_involutive(&g).unwrap().passed());
    let dr = Frame::derivations(&c);
    assert!(check_isotropic(&dr).passed());
    let gw = graph_atiyah(&omega_can(&c)).unwrap();
    assert!(check_isotropic(&gw).passed());
    assert!(check_involutive(&gw).unwrap().passed());
    let mut r = rng(5);
    let gb = graph_atiyah(&closed_b(&mut r, &c)).unwrap();
    assert!(check_involutive(&gb).unwrap().passed());
    let bad = graph_atiyah(&open_b(&c)).unwrap();
    let rep = check_involutive(&bad).unwrap();
    assert!(!rep.passed());
    assert!(rep.failures().next().unwrap().witness.is_some());

    let mut gens = dr.generators().to_vec();
    gens[0] = OmniSection::new(Derivation::coordinate(&c, 0), Jet::coordinate(&c, 0));
    let rep = check_isotropic(&Frame::new(&c, gens.clone()));
    assert!(!rep.passed());
    assert_eq!(rep.failures().next().unwrap().witness.as_deref(), Some("<<g1, g1>> = 2"));
    assert!(matches!(check_involutive(&Frame::new(&c, gens)), Err(OmniError::PreconditionNotMaximalIsotropic)));
}

#[test]
fn jacobi_graph_conventions() {
    let c = chart3();
    let (lam, e) = j_can(&c);
    let g = graph_jacobi(&lam, &e);
    // The generator over j carries the Reeb field with a minus sign.
    let last = &g.generators()[3];
    assert_eq!(last.d, Derivation::new(e.neg(), CScalar::zero(3)));
    assert_eq!(last.psi, Jet::j(&c));
    let zero = graph_jacobi(&Multivector::zero(&c, 2), &VectorField::zero(&c));
    assert!(frame_equal(&zero, &Frame::jets(&c)).unwrap());

    // <j^1 g, J# j^1 f> = Lambda(df, dg) + E(f) g - f E(g).
    let mons = [int(&c, 1), var(&c, 0), var(&c, 1), var(&c, 2), &var(&c, 0) * &var(&c, 1), &var(&c, 1) * &var(&c, 2)];
    for f in &mons {
        for h in &mons {
            let lhs = Jet::prolong(h, &c).pair(&jacobi_sharp(&lam, &e, &Jet::prolong(f, &c)));
            let df = dj_cartan::df(f, &c);
            let dh = dj_cartan::df(h, &c);
            let rhs = &(&dj_cartan::eval_multivector(&lam, &[df, dh]) + &(&e.apply(f) * h)) - &(f * &e.apply(h));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn varpi_examples() {
    let c = chart3();
    let w = omega_can(&c);
    let gw = graph_atiyah(&w).unwrap();
    let mut r = rng(9);
    for _ in 0..5 {
        let a = arand::derivation(&mut r, &c, SHAPE);
        let b = arand::derivation(&mut r, &c, SHAPE);
        assert_eq!(varpi(&gw, &a, &b).unwrap(), w.eval(&[a.clone(), b.clone()]).unwrap());
    }
    let (lam, e) = j_can(&c);
    let g = graph_jacobi(&lam, &e);
    let dlt = jacobi_sharp(&lam, &e, &Jet::coordinate(&c, 0));
    assert!(varpi(&g, &dlt, &dlt).unwrap().is_zero());
    let jets = Frame::jets(&c);
    assert!(matches!(varpi(&jets, &Derivation::one(&c), &Derivation::one(&c)), Err(OmniError::NotInProjection)));
}

#[test]
fn star_examples() {
    let c = chart3();
    let (lam, e) = j_can(&c);
    let g = graph_jacobi(&lam, &e);
    let dr = Frame::derivations(&c);
    assert!(frame_equal(&star(&g, &dr).unwrap(), &g).unwrap());
    let mut r = rng(17);
    let b = closed_b(&mut r, &c);
    let lhs = star(&g, &graph_atiyah(&b).unwrap()).unwrap();
    assert!(frame_equal(&lhs, &g.bfield(&b, false).unwrap()).unwrap());
    let jets = Frame::jets(&c);
    assert!(frame_equal(&star(&jets, &jets).unwrap(), &jets).unwrap());
    // J_can is non-degenerate, so only psi = 0 has a vanishing image and the
    // product with the jet summand is the jet summand.
    assert!(frame_equal(&star(&g, &jets).unwrap(), &jets).unwrap());
}

#[test]
fn frame_equality_examples() {
    let c = chart3();
    let (lam, e) = j_can(&c);
    let g = graph_jacobi(&lam, &e);
    let mut gens = g.generators().to_vec();
    let x = var(&c, 0);
    gens[1] = gens[1].scale(&(&int(&c, 1) + &(&x * &x)));
    assert!(frame_equal(&g, &Frame::new(&c, gens)).unwrap());
    assert!(!frame_equal(&Frame::derivations(&c), &Frame::jets(&c)).unwrap());
    let mut r = rng(23);
    let b = closed_b(&mut r, &c);
    let back = g.bfield(&b, false).unwrap().bfield(&b.neg(), false).unwrap();
    assert!(frame_equal(&back, &g).unwrap());
}

#[test]
fn backward_images() {
    let a = Chart::new(&["x", "p", "u"]).unwrap();
    let b = Chart::new(&["y", "q"]).unwrap();
    let ab = Chart::product(&a, &b).unwrap();
    let lifted = backward_projection(&Frame::derivations(&a), &ab).unwrap();
    assert!(frame_equal(&lifted, &Frame::derivations(&ab)).unwrap());
    let (lam, e) = j_can(&a);
    let lg = backward_projection(&graph_jacobi(&lam, &e), &ab).unwrap();
    assert!(check_isotropic(&lg).passed());
    assert!(check_involutive(&lg).unwrap().passed());
    assert_eq!(backward_embedding(&lg, &[]).unwrap(), lg);
    // Restricting the lift back to the first factor recovers the graph.
    let back = backward_embedding(&lg, &["y", "q"]).unwrap();
    assert!(frame_equal(&back, &graph_jacobi(&lam, &e)).unwrap());
    let fp = flat_product(&graph_jacobi(&lam, &e), &Frame::derivations(&b)).unwrap();
    assert!(frame_equal(&fp, &lg).unwrap());
}

#[test]
fn flat_product_commutes_with_pulled_back_bfields() {
    let a = Chart::new(&["x", "p", "u"]).unwrap();
    let b = Chart::new(&["y", "q"]).unwrap();
    let ab = Chart::product(&a, &b).unwrap();
    let (lam, e) = j_can(&a);
    let l1 = graph_jacobi(&lam, &e);
    let l2 = Frame::derivations(&b);
    let mut r = rng(29);
    let bf = closed_b(&mut r, &a);
    let lhs = flat_product(&l1, &l2).unwrap().bfield(&pull_back(&bf, &ab).unwrap(), false).unwrap();
    let rhs = flat_product(&l1.bfield(&bf, false).unwrap(), &l2).unwrap();
    assert!(frame_equal(&lhs, &rhs).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn pairing_is_bfield_invariant(seed in any::<u64>()) {
        let c = chart3();
        let mut r = rng(seed);
        let a = section(&mut r, &c);
        let b = section(&mut r, &c);
        let bf = arand::form(&mut r, &c, 2, 2, SHAPE);
        let (ea, eb) = (a.bfield_unchecked(&bf), b.bfield_unchecked(&bf));
        prop_assert_eq!(ea.pair(&eb), a.pair(&b));
    }

    #[test]
    fn bracket_is_invariant_under_closed_bfields(seed in any::<u64>()) {
        let c = chart3();
        let mut r = rng(seed);
        let a = section(&mut r, &c);
        let b = section(&mut r, &c);
        let bf = closed_b(&mut r, &c);
        let lhs = a.bfield_unchecked(&bf).dorfman(&b.bfield_unchecked(&bf));
        prop_assert_eq!(lhs, a.dorfman(&b).bfield_unchecked(&bf));
        let ob = open_b(&c);
        let x = OmniSection::derivation(Derivation::coordinate(&c, 0));
        let u = OmniSection::derivation(Derivation::coordinate(&c, 2));
        let defect = x.bfield_unchecked(&ob).dorfman(&u.bfield_unchecked(&ob)).sub(&x.dorfman(&u).bfield_unchecked(&ob));
        prop_assert!(!defect.is_zero());
    }

    #[test]
    fn dorfman_jacobi_identity(seed in any::<u64>()) {
        let c = chart3();
        let mut r = rng(seed);
        let a = section(&mut r, &c);
        let b = section(&mut r, &c);
        let g = section(&mut r, &c);
        let lhs = a.dorfman(&b.dorfman(&g));
        let rhs = a.dorfman(&b).dorfman(&g).add(&b.dorfman(&a.dorfman(&g)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn self_bracket_is_exact(seed in any::<u64>()) {
        let c = chart3();
        let mut r = rng(seed);
        let a = section(&mut r, &c);
        let s = a.dorfman(&a);
        prop_assert!(s.d.is_zero());
        prop_assert_eq!(s.psi, Jet::prolong(&a.psi.pair(&a.d), &c));
    }

    #[test]
    fn varpi_is_solution_independent_and_skew(seed in any::<u64>()) {
        let c = chart3();
        let (lam, e) = j_can(&c);
        let g = graph_jacobi(&lam, &e);
        let mut r = rng(seed);
        let bf = closed_b(&mut r, &c);
        let f = g.bfield(&bf, false).unwrap();
        // Add a redundant generator so the linear system has a kernel.
        let mut gens = f.generators().to_vec();
        gens.push(gens[0].add(&gens[2].scale(&c_var(&c))));
        let f1 = Frame::new(&c, gens.clone());
        gens.reverse();
        let f2 = Frame::new(&c, gens);
        let psi1 = arand::jet(&mut r, &c, SHAPE);
        let psi2 = arand::jet(&mut r, &c, SHAPE);
        let a = jacobi_sharp(&lam, &e, &psi1);
        let b = jacobi_sharp(&lam, &e, &psi2);
        let v1 = varpi(&f1, &a, &b).unwrap();
        prop_assert_eq!(v1.clone(), varpi(&f2, &a, &b).unwrap());
        prop_assert_eq!(v1, -&varpi(&f1, &b, &a).unwrap());
    }
}

fn c_var(c: &Arc<Chart>) -> CScalar {
    var(c, 0)
}
