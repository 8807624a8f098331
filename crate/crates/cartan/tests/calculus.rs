use std::sync::Arc;

use dj_cartan::random::{alt, vector, Shape};
use dj_cartan::*;
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

fn vf(c: &Arc<Chart>, i: usize) -> Multivector {
    VectorField::basis(c, i).to_multivector()
}

#[test]
fn differential_of_coordinate_product() {
    let c = chart3();
    let f = &var(&c, 0) * &var(&c, 1);
    let w = df(&f, &c);
    assert_eq!(w.coeff(&[0]), var(&c, 1));
    assert_eq!(w.coeff(&[1]), var(&c, 0));
    assert!(w.coeff(&[2]).is_zero());
}

#[test]
fn interior_sign_convention() {
    let c = chart3();
    // i_{d/dp}(dx ^ dp) = -dx
    let w = Form::basis(&c, &[0, 1]);
    let r = interior(&VectorField::basis(&c, 1), &w);
    assert_eq!(r, Form::basis(&c, &[0]).neg());
    // (dx ^ dp)(d/dx, d/dp) = 1 in the determinant convention.
    assert!(eval_form(&w, &[VectorField::basis(&c, 0), VectorField::basis(&c, 1)]).is_one());
}

#[test]
fn canonical_jacobi_bivector_satisfies_structure_equations() {
    // On (x, p, u): Lambda = d/dp ^ (d/dx + p d/du), E = d/du.
    let c = chart3();
    let lam = vf(&c, 1).wedge(&vf(&c, 0).add(&vf(&c, 2).scale(&var(&c, 1))));
    let e = vf(&c, 2);
    let ll = schouten(&lam, &lam);
    assert_eq!(ll, e.wedge(&lam).scale(&CScalar::int(3, 2)));
    assert!(schouten(&e, &lam).is_zero());
    // E ^ Lambda on the sorted triple.
    assert_eq!(e.wedge(&lam), Multivector::basis(&c, &[0, 1, 2]).neg());
}

#[test]
fn schouten_matches_lie_bracket_and_functions() {
    let c = chart3();
    let x = VectorField::new(&c, vec![var(&c, 1), CScalar::zero(3), &var(&c, 0) * &var(&c, 2)]);
    let y = VectorField::new(&c, vec![CScalar::one(3), var(&c, 2), var(&c, 0)]);
    let s = schouten(&x.to_multivector(), &y.to_multivector());
    assert_eq!(VectorField::from_multivector(&s), x.bracket(&y));
    let f = Multivector::scalar(&c, &var(&c, 0) * &var(&c, 1));
    assert_eq!(schouten(&x.to_multivector(), &f).scalar_part(), x.apply(&f.scalar_part()));
    assert_eq!(schouten(&f, &x.to_multivector()).scalar_part(), -&x.apply(&f.scalar_part()));
}

#[test]
fn nijenhuis_of_constant_complex_structure_vanishes() {
    let c = Chart::new(&["x", "y"]).unwrap();
    let dx = Form::basis(&c, &[0]);
    let dy = Form::basis(&c, &[1]);
    let j = Endo11::tensor(&dx, &VectorField::basis(&c, 1)).sub(&Endo11::tensor(&dy, &VectorField::basis(&c, 0)));
    assert!(j.nijenhuis().is_zero());
    assert_eq!(j.compose(&j), Endo11::identity(&c).scale(&CScalar::int(2, -1)));
}

#[test]
fn nijenhuis_detects_non_integrable_structure() {
    // dx(x)d/dy - dy(x)d/dx + y dy(x)d/du on (u, x, y): N(d/dx, d/dy) = d/du.
    let c = Chart::new(&["u", "x", "y"]).unwrap();
    let dx = Form::basis(&c, &[1]);
    let dy = Form::basis(&c, &[2]);
    let phi = Endo11::tensor(&dx, &VectorField::basis(&c, 2))
        .sub(&Endo11::tensor(&dy, &VectorField::basis(&c, 1)))
        .add(&Endo11::tensor(&dy.scale(&var(&c, 2)), &VectorField::basis(&c, 0)));
    let n = phi.nijenhuis();
    let (i, j, v) = n.first_nonzero().expect("torsion is nonzero");
    assert_eq!((*i, *j), (1, 2));
    assert_eq!(v, &VectorField::basis(&c, 0));
}

#[test]
fn torsion_vanishes_when_the_only_bracket_lands_in_the_kernel() {
    // With x dy(x)d/du instead, [d/dx, Phi d/dy] = d/du is killed by Phi.
    let c = Chart::new(&["u", "x", "y"]).unwrap();
    let dx = Form::basis(&c, &[1]);
    let dy = Form::basis(&c, &[2]);
    let phi = Endo11::tensor(&dx, &VectorField::basis(&c, 2))
        .sub(&Endo11::tensor(&dy, &VectorField::basis(&c, 1)))
        .add(&Endo11::tensor(&dy.scale(&var(&c, 1)), &VectorField::basis(&c, 0)));
    assert!(phi.nijenhuis().is_zero());
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Schouten bracket of decomposable multivectors, expanded by the Leibniz
/// rule into Lie brackets of the factors.
fn decomposable_oracle(xs: &[VectorField], ys: &[VectorField]) -> Multivector {
    let chart = xs[0].chart().clone();
    let wedge_all = |vs: Vec<&VectorField>| {
        vs.into_iter()
            .fold(Multivector::scalar(&chart, CScalar::one(chart.dim())), |acc, v| acc.wedge(&v.to_multivector()))
    };
    let mut acc = Multivector::zero(&chart, xs.len() + ys.len() - 1);
    for (i, xi) in xs.iter().enumerate() {
        for (j, yj) in ys.iter().enumerate() {
            let rest_x: Vec<&VectorField> = xs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, v)| v).collect();
            let rest_y: Vec<&VectorField> = ys.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v).collect();
            let mut rest = rest_x;
            rest.extend(rest_y);
            let t = xi.bracket(yj).to_multivector().wedge(&wedge_all(rest));
            acc = if (i + j) % 2 == 1 { acc.sub(&t) } else { acc.add(&t) };
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn d_squares_to_zero(seed in any::<u64>(), k in 0usize..3) {
        let c = chart3();
        let mut r = rng(seed);
        let w: Form = alt(&mut r, &c, k, 3, Shape { degree: 3, terms: 3, complex: true });
        prop_assert!(d(&d(&w)).is_zero());
    }

    #[test]
    fn cartan_magic_formula(seed in any::<u64>(), k in 0usize..4) {
        let c = chart3();
        let mut r = rng(seed);
        let w: Form = alt(&mut r, &c, k, 3, Shape::real(2, 3));
        let x = vector(&mut r, &c, Shape::real(2, 2));
        let lhs = lie_form(&x, &w);
        let rhs = interior(&x, &d(&w)).add(&d(&interior(&x, &w)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_is_an_antiderivation(seed in any::<u64>(), k in 0usize..3, l in 0usize..2) {
        let c = chart3();
        let mut r = rng(seed);
        let a: Form = alt(&mut r, &c, k, 2, Shape::real(2, 2));
        let b: Form = alt(&mut r, &c, l, 2, Shape::real(2, 2));
        let x = vector(&mut r, &c, Shape::real(1, 2));
        let lhs = interior(&x, &a.wedge(&b));
        let t2 = a.wedge(&interior(&x, &b));
        let rhs = interior(&x, &a).wedge(&b).add(&if k % 2 == 1 { t2.neg() } else { t2 });
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_of_multivector_is_schouten_with_vector(seed in any::<u64>(), k in 0usize..4) {
        let c = chart3();
        let mut r = rng(seed);
        let p: Multivector = alt(&mut r, &c, k, 3, Shape::real(2, 2));
        let x = vector(&mut r, &c, Shape::real(2, 2));
        prop_assert_eq!(lie_multivector(&x, &p), schouten(&x.to_multivector(), &p));
    }

    #[test]
    fn schouten_matches_decomposable_expansion(seed in any::<u64>(), p in 1usize..3, q in 1usize..3) {
        let c = chart3();
        let mut r = rng(seed);
        let xs: Vec<VectorField> = (0..p).map(|_| vector(&mut r, &c, Shape::real(2, 2))).collect();
        let ys: Vec<VectorField> = (0..q).map(|_| vector(&mut r, &c, Shape::real(2, 2))).collect();
        let wedge = |vs: &[VectorField]| vs.iter().skip(1).fold(vs[0].to_multivector(), |acc, v| acc.wedge(&v.to_multivector()));
        prop_assert_eq!(schouten(&wedge(&xs), &wedge(&ys)), decomposable_oracle(&xs, &ys));
    }

    #[test]
    fn schouten_graded_antisymmetry(seed in any::<u64>(), p in 0usize..3, q in 0usize..3) {
        let c = chart3();
        let mut r = rng(seed);
        let a: Multivector = alt(&mut r, &c, p, 2, Shape::real(2, 2));
        let b: Multivector = alt(&mut r, &c, q, 2, Shape::real(2, 2));
        prop_assume!(p + q >= 1);
        let lhs = schouten(&a, &b);
        let rhs = schouten(&b, &a);
        // [P,Q] = -(-1)^{(p-1)(q-1)} [Q,P]
        let odd = ((p as i64 - 1) * (q as i64 - 1)).rem_euclid(2) == 1;
        prop_assert_eq!(lhs, if odd { rhs } else { rhs.neg() });
    }

    #[test]
    fn lie_derivative_of_tensor_product_endomorphism(seed in any::<u64>()) {
        let c = chart3();
        let mut r = rng(seed);
        let a: Form = alt(&mut r, &c, 1, 2, Shape::real(2, 2));
        let y = vector(&mut r, &c, Shape::real(2, 2));
        let x = vector(&mut r, &c, Shape::real(2, 2));
        let lhs = Endo11::tensor(&a, &y).lie(&x);
        let rhs = Endo11::tensor(&lie_form(&x, &a), &y).add(&Endo11::tensor(&a, &x.bracket(&y)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_graded_jacobi(seed in any::<u64>(), which in 0usize..2) {
        let c = chart3();
        let mut r = rng(seed);
        let (p, q, s) = if which == 0 { (1, 1, 2) } else { (1, 2, 2) };
        let a: Multivector = alt(&mut r, &c, p, 2, Shape::real(2, 2));
        let b: Multivector = alt(&mut r, &c, q, 2, Shape::real(2, 2));
        let e: Multivector = alt(&mut r, &c, s, 2, Shape::real(2, 2));
        // [A,[B,C]] = [[A,B],C] + (-1)^{(a-1)(b-1)} [B,[A,C]]
        let lhs = schouten(&a, &schouten(&b, &e));
        let t = schouten(&b, &schouten(&a, &e));
        let sign_odd = ((p - 1) * (q - 1)) % 2 == 1;
        let rhs = schouten(&schouten(&a, &b), &e).add(&if sign_odd { t.neg() } else { t });
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nijenhuis_is_tensorial(seed in any::<u64>()) {
        let c = chart3();
        let mut r = rng(seed);
        let n = c.dim();
        let m: Vec<Vec<CScalar>> = (0..n).map(|_| (0..n).map(|_| dj_scalar::random::real(&mut r, n, 1, 2)).collect()).collect();
        let phi = Endo11::new(&c, m);
        let x = vector(&mut r, &c, Shape::real(1, 2));
        let y = vector(&mut r, &c, Shape::real(1, 2));
        let f = dj_scalar::random::real(&mut r, n, 2, 2);
        prop_assert_eq!(phi.nijenhuis_on(&x.scale(&f), &y), phi.nijenhuis_on(&x, &y).scale(&f));
    }
}
