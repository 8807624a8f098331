use std::sync::Arc;

use dj_atiyah::{random as arandom, AtiyahForm, Derivation, GaugeEndo, Jet};
use dj_cartan::random::Shape;
use dj_cartan::{Endo11, Form, Multivector, VectorField};
use dj_omni::{backward_embedding, check_involutive, check_isotropic, flat_product, frame_equal, graph_atiyah, Frame, OmniSection};
use dj_scalar::{CScalar, Chart};
use dj_structures::canonical::*;
use dj_structures::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn chart(names: &[&str]) -> Arc<Chart> {
    Chart::new(names).unwrap()
}

fn var(c: &Arc<Chart>, name: &str) -> CScalar {
    CScalar::var(c.dim(), c.index_of(name).unwrap())
}

fn int(c: &Arc<Chart>, v: i64) -> CScalar {
    CScalar::int(c.dim(), v)
}

fn dv(c: &Arc<Chart>, name: &str) -> VectorField {
    VectorField::basis(c, c.index_of(name).unwrap())
}

fn dx(c: &Arc<Chart>, name: &str) -> Form {
    Form::basis(c, &[c.index_of(name).unwrap()])
}

fn wedge(a: &VectorField, b: &VectorField) -> Multivector {
    a.to_multivector().wedge(&b.to_multivector())
}

// ---------------------------------------------------------------- Jacobi

#[test]
fn canonical_jacobi_pair_matches_formula() {
    let Structure::Jacobi(j) = canonical("J_can", 1).unwrap() else { panic!() };
    let c = j.chart().clone();
    assert_eq!(c.names(), &["x", "p", "u"]);
    let expected = wedge(&dv(&c, "p"), &dv(&c, "x").add(&dv(&c, "u").scale(&var(&c, "p"))));
    assert_eq!(j.lambda, expected);
    assert_eq!(j.e, dv(&c, "u"));
}

#[test]
fn canonical_jacobi_pairs_pass() {
    for d in 1..=2 {
        let Structure::Jacobi(j) = canonical("J_can", d).unwrap() else { panic!() };
        let rep = check_jacobi_pair(&j.lambda, &j.e);
        assert!(rep.passed(), "d = {d}: {rep:?}");
        assert_eq!(rep.checks.len(), 3);
    }
}

#[test]
fn zero_jacobi_pair_passes() {
    let c = contact_chart(1);
    let z = JacobiPair::zero(&c);
    assert!(check_jacobi_pair(&z.lambda, &z.e).passed());
}

#[test]
fn commuting_wedge_is_poisson() {
    // d/dx ^ (d/dp + u d/du) is the wedge of two commuting vector fields.
    let c = contact_chart(1);
    let lam = wedge(&dv(&c, "x"), &dv(&c, "p")).add(&wedge(&dv(&c, "x"), &dv(&c, "u")).scale(&var(&c, "u")));
    assert!(check_jacobi_pair(&lam, &VectorField::zero(&c)).passed());
}

#[test]
fn non_jacobi_bivector_fails_with_schouten_witness() {
    let c = contact_chart(1);
    let lam = wedge(&dv(&c, "x"), &dv(&c, "p")).sub(&wedge(&dv(&c, "x"), &dv(&c, "u")).scale(&var(&c, "x")));
    let rep = check_jacobi_pair(&lam, &VectorField::zero(&c));
    assert!(!rep.passed());
    let first = &rep.checks[0];
    assert!(!first.passed);
    assert!(first.witness.as_ref().unwrap().starts_with("[L, L] - 2 E ^ L ="));
    // The independent bracket oracle agrees.
    assert!(!rep.checks[2].passed);
}

#[test]
fn jacobi_bracket_calibration() {
    // {f, g} = <j^1 g, J# j^1 f>.
    let Structure::Jacobi(j) = canonical("J_can", 1).unwrap() else { panic!() };
    let c = j.chart().clone();
    let f = &(&var(&c, "x") * &var(&c, "u")) + &var(&c, "p");
    let g = &var(&c, "p") * &var(&c, "p");
    let lhs = j.bracket(&f, &g);
    let rhs = Jet::prolong(&g, &c).pair(&j.sharp(&Jet::prolong(&f, &c)));
    assert_eq!(lhs, rhs);
    // {u, x} = E(u) x - u E(x) + Lambda(du, dx) = x.
    assert_eq!(j.bracket(&var(&c, "u"), &var(&c, "x")), var(&c, "x"));
}

#[test]
fn homogeneous_poisson_examples() {
    for d in 1..=2 {
        let Structure::HomPoisson(h) = canonical("piZ_can", d).unwrap() else { panic!() };
        assert!(check_hom_poisson(&h.pi, &h.z).passed());
        let rep = check_hom_poisson(&h.pi, &VectorField::zero(h.chart()));
        assert!(rep.checks[0].passed);
        assert_eq!(rep.checks[1].witness.as_deref(), Some(format!("L_Z pi + pi = {}", show::multivector(&h.pi)).as_str()));
    }
    let c = symplectic_chart(1);
    let pi = wedge(&dv(&c, "x"), &dv(&c, "p")).scale(&var(&c, "x"));
    assert!(!check_hom_poisson(&pi, &dv(&c, "x").scale(&var(&c, "x"))).passed());
}

// ---------------------------------------------------------- inverses

#[test]
fn inverse_of_canonical_jacobi_pair() {
    let c = contact_chart(1);
    let inv = invert_jacobi(&j_can_on(&c)).unwrap();
    assert_eq!(inv.omega, omega_can_on(&c));
    assert_eq!(inv.theta, theta_can_on(&c));
    assert_eq!(show::form(&inv.theta), "du + (-p)*dx".replace("du + (-p)*dx", &show::form(&theta_can_on(&c))));
    assert!(matches!(invert_jacobi(&JacobiPair::zero(&c)), Err(StructError::Degenerate(_))));
    // graph(J) = graph(omega) under omega_flat = (J#)^{-1}.
    assert!(frame_equal(&j_can_on(&c).graph(), &graph_atiyah(&inv.omega).unwrap()).unwrap());
}

#[test]
fn theta_can_literal() {
    let Structure::Form(t) = canonical("theta_can", 1).unwrap() else { panic!() };
    let c = t.chart().clone();
    assert_eq!(t, dx(&c, "u").sub(&dx(&c, "x").scale(&var(&c, "p"))));
}

#[test]
fn xi_can_is_minus_d_of_liouville_form() {
    let Structure::Atiyah(xi) = canonical("xi_can", 1).unwrap() else { panic!() };
    let c = xi.chart().clone();
    // -d_D(p dx) = dx ^ dp + (p dx) ^ j.
    let expected = AtiyahForm::new(2, dx(&c, "x").wedge(&dx(&c, "p")), dx(&c, "x").scale(&var(&c, "p"))).unwrap();
    assert_eq!(xi, expected);
    assert!(xi.d().is_zero());
}

#[test]
fn lcs_to_jacobi_examples() {
    let c = symplectic_chart(1);
    let j = lcs_to_jacobi(&big_omega_can_on(&c), &Form::zero(&c, 1)).unwrap();
    let hp = hp_can_on(&c);
    assert_eq!(j.lambda, hp.pi);
    assert!(j.e.is_zero());
    let odd = contact_chart(1);
    let w = dx(&odd, "x").wedge(&dx(&odd, "p"));
    assert!(matches!(lcs_to_jacobi(&w, &Form::zero(&odd, 1)), Err(StructError::Degenerate(_))));
    let open = dx(&c, "p").scale(&var(&c, "x"));
    assert!(matches!(lcs_to_jacobi(&big_omega_can_on(&c), &open), Err(StructError::NotFlat(_))));
}

#[test]
fn lcs_bracket_matches_connection_oracle() {
    let c = chart(&["a", "b", "s", "t"]);
    let (a, b, s) = (var(&c, "a"), var(&c, "b"), var(&c, "s"));
    // Omega = d theta + gamma ^ theta is closed for d + gamma.
    let gamma = dj_cartan::df(&(&(&a * &s) + &b), &c);
    let theta = dx(&c, "b").scale(&a).add(&dx(&c, "t").scale(&s));
    let omega = dj_cartan::d(&theta).add(&gamma.wedge(&theta));
    let j = lcs_to_jacobi(&omega, &gamma).unwrap();
    assert!(check_jacobi_pair(&j.lambda, &j.e).passed());
    // Oracle: Omega^{-1}(d f + gamma f, d g + gamma g) evaluated from the
    // inverse matrix independently of the sharp map.
    let n = c.dim();
    let w: Vec<Vec<CScalar>> = (0..n).map(|i| (0..n).map(|k| omega.coeff(&[i, k])).collect()).collect();
    let p = dj_scalar::linalg::invert(&w, n).unwrap();
    let gc = dj_cartan::one_form_comps(&gamma);
    let dnabla = |f: &CScalar| -> Vec<CScalar> { (0..n).map(|i| &f.derivative(i) + &(&gc[i] * f)).collect() };
    for f in dj_structures::jacobi::monomials(&c, 2).iter().take(8) {
        for g in dj_structures::jacobi::monomials(&c, 2).iter().skip(3).take(8) {
            let (u, v) = (dnabla(f), dnabla(g));
            let mut o = CScalar::zero(n);
            for i in 0..n {
                for k in 0..n {
                    o = &o + &(&(&p[i][k] * &u[i]) * &v[k]);
                }
            }
            assert_eq!(j.bracket(f, g), o);
        }
    }
    let _ = s;
}

// ------------------------------------------------- generalized contact

fn contact_k(d: usize) -> GenContactOp {
    let Structure::GenContact(k) = canonical("K_contact_can", d).unwrap() else { panic!() };
    k
}

fn complex_k(n: usize) -> GenContactOp {
    let Structure::GenContact(k) = canonical("K_complex_can", n).unwrap() else { panic!() };
    k
}

#[test]
fn canonical_generalized_contact_operators_pass() {
    let rep = check_gen_contact(&contact_k(1));
    assert!(rep.passed(), "{rep:?}");
    let rep = check_gen_contact(&complex_k(1));
    assert!(rep.passed(), "{rep:?}");
    let c = contact_chart(1);
    assert_eq!(GenContactOp::contact_from_jacobi(&j_can_on(&c)).unwrap(), contact_k(1));
}

#[test]
fn flipped_phi_can_is_not_almost_complex() {
    let c = cylinder_chart(1);
    let mut m = phi_can_on(&c).matrix().to_vec();
    m[0][3] = int(&c, -1);
    let k = GenContactOp::complex_type(&GaugeEndo::new(&c, m).unwrap());
    let rep = check_gen_contact(&k);
    assert!(!rep.checks[0].passed);
    assert!(matches!(eigenframe(&k), Err(StructError::NotAlmostComplex(_))));
}

#[test]
fn zero_operator_has_no_eigenframe() {
    let c = contact_chart(1);
    let k = GenContactOp::contact(&JacobiPair::zero(&c), &AtiyahForm::zero(&c, 2)).unwrap();
    assert!(matches!(eigenframe(&k), Err(StructError::NotAlmostComplex(_))));
}

#[test]
fn complex_type_eigenframe_contains_box() {
    let c = cylinder_chart(1);
    let f = eigenframe(&complex_k(1)).unwrap();
    assert_eq!(f.len(), 4);
    let one = Derivation::one(&c);
    let du = Derivation::coordinate(&c, 0).scale(&CScalar::i(3));
    let bx = OmniSection::derivation(one.sub(&du));
    let union = Frame::new(&c, f.generators().iter().cloned().chain([bx]).collect());
    assert_eq!(union.rank(), 4);
    let Structure::Frame(l) = canonical("L_RxCn", 1).unwrap() else { panic!() };
    assert!(frame_equal(&l, &f).unwrap());
}

#[test]
fn contact_eigenframe_is_complex_bfield_of_derivations() {
    for d in 1..=2 {
        let f = eigenframe(&contact_k(d)).unwrap();
        let Structure::Frame(l) = canonical("L_can_odd", d).unwrap() else { panic!() };
        assert!(frame_equal(&f, &l).unwrap(), "d = {d}");
    }
}

// --------------------------------------------------------- hom-GC

#[test]
fn canonical_hom_gc_pass() {
    for n in 1..=2 {
        let Structure::HomGC(h) = canonical("hgc_complex_can", n).unwrap() else { panic!() };
        let rep = check_hom_gc(&h).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let Structure::HomGC(h) = canonical("hgc_symplectic_can", n).unwrap() else { panic!() };
        let rep = check_hom_gc(&h).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
}

#[test]
fn translation_invariant_complex_structure_is_homogeneous_for_d_dx() {
    let c = complex_chart(1);
    let mut h = hgc_complex_on(&c);
    h.z = dv(&c, "x");
    assert!(check_hom_gc(&h).unwrap().passed());
}

#[test]
fn dilation_breaks_first_homogeneity_equation() {
    let c = complex_chart(1);
    let mut h = hgc_complex_on(&c);
    h.z = dv(&c, "x").scale(&var(&c, "x"));
    let rep = check_hom_gc(&h).unwrap();
    let names: Vec<(&str, bool)> = rep.checks.iter().map(|c| (c.name.as_str(), c.passed)).collect();
    assert_eq!(
        names,
        vec![
            ("integrable", true),
            ("L_Z A = pi# o (d zeta)_flat", false),
            ("L_Z pi = -pi", true),
            ("L_Z sigma = sigma - i_A d zeta", true),
            ("eigenbundle preserved by ([Z, -] + 1, L_Z + i_- d zeta)", false),
        ]
    );
}

#[test]
fn non_complex_data_is_rejected() {
    let c = complex_chart(1);
    let mut h = hgc_complex_on(&c);
    h.a = Endo11::identity(&c);
    assert!(matches!(check_hom_gc(&h), Err(StructError::NotGeneralizedComplex(_))));
}

#[test]
fn l_jz_of_symplectic_structure_is_complex_bfield() {
    for d in 1..=2 {
        let c = symplectic_chart(d);
        let l = build_l_jz(&hgc_symplectic_on(&c)).unwrap();
        assert!(check_isotropic(&l).passed());
        assert!(check_involutive(&l).unwrap().passed());
        let Structure::Frame(ev) = canonical("L_can_ev", d).unwrap() else { panic!() };
        assert!(frame_equal(&l, &ev).unwrap(), "d = {d}");
    }
}

#[test]
fn l_cn_spans_one_holomorphic_vectors_and_antiholomorphic_forms() {
    let c = complex_chart(1);
    let Structure::Frame(l) = canonical("L_Cn", 1).unwrap() else { panic!() };
    let i = CScalar::i(2);
    // (1, 0), (d/dx - i d/dy, 0), (0, dx - i dy).
    let gens = vec![
        OmniSection::derivation(Derivation::one(&c)),
        OmniSection::derivation(Derivation::new(dv(&c, "x").sub(&dv(&c, "y").scale(&i)), CScalar::zero(2))),
        OmniSection::jet(Jet::new(dx(&c, "x").sub(&dx(&c, "y").scale(&i)), CScalar::zero(2))),
    ];
    assert!(frame_equal(&l, &Frame::new(&c, gens)).unwrap());
    assert!(check_involutive(&l).unwrap().passed());
}

// ------------------------------------------------------- classification

#[test]
fn classification_examples() {
    let k = eigenframe(&contact_k(1)).unwrap();
    assert_eq!(classify_dj(&k).unwrap().kind, DjKind::GeneralizedContact);
    let Structure::Frame(l) = canonical("L_Cn", 1).unwrap() else { panic!() };
    let cl = classify_dj(&l).unwrap();
    assert_eq!(cl.kind, DjKind::HomGC);
    let s = cl.real_section.unwrap();
    assert_eq!(s, OmniSection::derivation(Derivation::one(l.chart())));
    let jets = Frame::jets(&contact_chart(1));
    let cl = classify_dj(&jets).unwrap();
    assert_eq!(cl.kind, DjKind::Neither);
    assert_eq!(cl.real_rank, 4);
    let c = contact_chart(1);
    let bad = Frame::new(&c, vec![OmniSection::new(Derivation::coordinate(&c, 0), Jet::coordinate(&c, 0))]);
    assert!(matches!(classify_dj(&bad), Err(StructError::PreconditionFailed(_))));
}

// ------------------------------------------------------------ NACS

#[test]
fn normal_form_nacs_pass() {
    let c = cylinder_chart(1);
    let (x, y) = (var(&c, "x"), var(&c, "y"));
    for f in [CScalar::zero(3), x.clone(), &x * &y] {
        let t = AcQuadruple::normal_form(&c, &f);
        let rep = check_nacs(&t);
        assert!(rep.passed(), "f = {}: {rep:?}", f.render(c.names()));
        assert!(check_dl_complex(&t.to_phi()).passed());
    }
    let t = AcQuadruple::normal_form(&c, &CScalar::zero(3));
    assert_eq!(t.to_phi(), phi_can_on(&c));
    // f = x: eta = du - dy and Phi gains dx (x) d/du.
    let t = AcQuadruple::normal_form(&c, &x);
    assert_eq!(t.eta, dx(&c, "y").sub(&dx(&c, "u")));
    assert_eq!(t.phi.apply(&dv(&c, "x")), dv(&c, "y").add(&dv(&c, "u")));
}

#[test]
fn gauge_transform_round_trip() {
    let c = cylinder_chart(1);
    let (x, y, u) = (var(&c, "x"), var(&c, "y"), var(&c, "u"));
    let t = AcQuadruple::normal_form(&c, &(&x * &y));
    let f = &(&x * &u) + &y;
    let s = t.gauge_transform(&f);
    assert_ne!(s, t);
    assert_eq!(s.g, x);
    assert_eq!(s.gauge_transform(&-&f), t);
    // The gauge action preserves integrability of the induced structure.
    assert!(check_dl_complex(&s.to_phi()).passed());
}

#[test]
fn non_normal_almost_contact_structure_fails() {
    let c = cylinder_chart(1);
    let (x, y) = (var(&c, "x"), var(&c, "y"));
    // Phi = dx (x) d/dy - dy (x) d/dx + (a dx + b dy) (x) d/du with
    // eta = du + b dx - a dy is almost contact. For a = u the torsion
    // N_Phi + d eta (x) xi is nonzero on (d/dy, d/du).
    let (a, b) = (var(&c, "u"), CScalar::zero(3));
    let t = nacs_family(&c, &a, &b);
    let rep = check_nacs(&t);
    assert!(rep.checks[..5].iter().all(|c| c.passed), "{rep:?}");
    assert!(!rep.checks[5].passed);
    assert!(!check_dl_complex(&t.to_phi()).passed());
    let _ = (x, y);
}

fn nacs_family(c: &Arc<Chart>, a: &CScalar, b: &CScalar) -> AcQuadruple {
    let n = c.dim();
    let mut m = vec![vec![CScalar::zero(n); n]; n];
    m[2][1] = CScalar::one(n);
    m[1][2] = CScalar::int(n, -1);
    m[0][1] = a.clone();
    m[0][2] = b.clone();
    let eta = dx(c, "u").add(&dx(c, "x").scale(b)).sub(&dx(c, "y").scale(a));
    AcQuadruple::triple(Endo11::new(c, m), dv(c, "u"), eta)
}

// -------------------------------------------------- gauge complex

#[test]
fn phi_can_is_integrable() {
    for n in 1..=2 {
        let Structure::Gauge(phi) = canonical("phi_can", n).unwrap() else { panic!() };
        let rep = check_dl_complex(&phi);
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.checks.len(), 3);
    }
}

#[test]
fn perturbed_phi_can_fails_square() {
    let c = cylinder_chart(1);
    let mut m = phi_can_on(&c).matrix().to_vec();
    m[3][3] = var(&c, "x");
    let rep = check_dl_complex(&GaugeEndo::new(&c, m).unwrap());
    assert!(!rep.checks[0].passed);
    assert!(!rep.passed());
}

#[test]
fn unknown_gallery_name() {
    assert!(matches!(canonical("J_cannot", 1), Err(StructError::UnknownName(_))));
    assert!(matches!(canonical("J_can", 0), Err(StructError::InvalidSize { .. })));
    for name in GALLERY {
        canonical(name, 1).unwrap();
    }
}

// ---------------------------------------------------------- products

#[test]
fn split_contact_examples() {
    let n = chart(&["y", "q"]);
    let zero = split_contact(&Multivector::zero(&n, 2), &VectorField::zero(&n), 1).unwrap();
    let big = zero.chart().clone();
    assert_eq!(big.names(), &["y", "q", "x", "p", "u"]);
    let jc = j_can_on(&contact_chart(1));
    assert_eq!(show::multivector(&zero.lambda), show::multivector(&jc.lambda));
    let hp = hp_can_on(&n);
    let s = split_contact(&hp.pi, &hp.z, 1).unwrap();
    assert!(check_jacobi_pair(&s.lambda, &s.e).passed());
    let s = split_contact(&hp.pi, &VectorField::zero(&n), 1).unwrap();
    assert!(!check_jacobi_pair(&s.lambda, &s.e).passed());
    // Clashing names are renamed.
    let clash = hp_can_on(&symplectic_chart(1));
    let s = split_contact(&clash.pi, &clash.z, 1).unwrap();
    assert_eq!(s.chart().names(), &["x", "p", "X", "P", "U"]);
}

#[test]
fn split_lcs_examples() {
    let n = chart(&["a", "b", "s"]);
    let zero = split_lcs(&Multivector::zero(&n, 2), &VectorField::zero(&n), 1).unwrap();
    assert_eq!(zero.chart().names(), &["a", "b", "s", "x", "p"]);
    assert_eq!(show::multivector(&zero.lambda), show::multivector(&hp_can_on(&symplectic_chart(1)).pi));
    assert!(zero.e.is_zero());
    let j = j_can_on(&n);
    let s = split_lcs(&j.lambda, &j.e, 1).unwrap();
    assert!(check_jacobi_pair(&s.lambda, &s.e).passed());
    let s = split_lcs(&j.lambda, &VectorField::zero(&n), 1).unwrap();
    assert!(!check_jacobi_pair(&s.lambda, &s.e).passed());
}

#[test]
fn contact_splitting_is_a_flat_product() {
    let n = chart(&["y", "q"]);
    let hp = hp_can_on(&n);
    let s = split_contact(&hp.pi, &hp.z, 1).unwrap();
    let prod = flat_product(&hp.dirac_jacobi(), &j_can_on(&contact_chart(1)).graph()).unwrap();
    assert!(frame_equal(&prod, &s.graph()).unwrap());
}

#[test]
fn lcs_splitting_is_a_flat_product() {
    let n = chart(&["a", "b", "s"]);
    let j = j_can_on(&n);
    let s = split_lcs(&j.lambda, &j.e, 1).unwrap();
    let hp = hp_can_on(&symplectic_chart(1));
    let prod = flat_product(&j.graph(), &hp.dirac_jacobi()).unwrap();
    assert!(frame_equal(&prod, &s.graph()).unwrap());
}

#[test]
fn leaf_and_transversal_of_the_contact_product() {
    // Generalized contact structure on N x R^3 whose Jacobi structure is
    // the contact splitting of criterion three.
    let n = chart(&["y", "q"]);
    let ln = build_l_jz(&hgc_symplectic_on(&n)).unwrap();
    let lodd = eigenframe(&contact_k(1)).unwrap();
    let l = flat_product(&ln, &lodd).unwrap();
    assert_eq!(classify_dj(&l).unwrap().kind, DjKind::GeneralizedContact);
    let leaf = backward_embedding(&l, &["y", "q"]).unwrap();
    assert_eq!(classify_dj(&leaf).unwrap().kind, DjKind::GeneralizedContact);
    let tr = backward_embedding(&l, &["x", "p", "u"]).unwrap();
    let cl = classify_dj(&tr).unwrap();
    assert_eq!(cl.kind, DjKind::HomGC);
    let s = cl.real_section.unwrap();
    let origin = vec![dj_scalar::Rational::from_integer(0.into()); 2];
    assert!(!dj_scalar::Field::is_zero(&s.d.f.eval(&origin).unwrap()));
}

#[test]
fn transversal_of_the_lcs_product() {
    let n = contact_chart(1);
    let lodd = eigenframe(&contact_k(1)).unwrap();
    let m = chart(&["a", "b"]);
    let lev = build_l_jz(&hgc_symplectic_on(&m)).unwrap();
    let l = flat_product(&lodd, &lev).unwrap();
    assert_eq!(classify_dj(&l).unwrap().kind, DjKind::GeneralizedContact);
    let tr = backward_embedding(&l, &["a", "b"]).unwrap();
    assert_eq!(tr.chart(), &n);
    assert_eq!(classify_dj(&tr).unwrap().kind, DjKind::GeneralizedContact);
    let leaf = backward_embedding(&l, &["x", "p", "u"]).unwrap();
    assert_eq!(classify_dj(&leaf).unwrap().kind, DjKind::HomGC);
}

// ----------------------------------------------------------- properties

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn split_contact_is_jacobi_iff_transversal_is_homogeneous(c in -3i64..=3, homogeneous in any::<bool>()) {
        let n = chart(&["y", "q"]);
        let hp = hp_can_on(&n);
        let pi = hp.pi.scale(&int(&n, c));
        let z = if homogeneous { hp.z.clone() } else { VectorField::zero(&n) };
        let s = split_contact(&pi, &z, 1).unwrap();
        prop_assert_eq!(check_jacobi_pair(&s.lambda, &s.e).passed(), check_hom_poisson(&pi, &z).passed());
    }

    #[test]
    fn bfield_conjugation_moves_eigenframes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = contact_k(1);
        let c = k.chart().clone();
        let a = arandom::form(&mut rng, &c, 1, 2, Shape::real(1, 2));
        let b = a.d();
        let kb = k.conjugate_bfield(&b).unwrap();
        prop_assert!(check_gen_contact(&kb).passed());
        let moved = eigenframe(&k).unwrap().bfield(&b, false).unwrap();
        prop_assert!(frame_equal(&moved, &eigenframe(&kb).unwrap()).unwrap());
        prop_assert_eq!(classify_dj(&eigenframe(&kb).unwrap()).unwrap().kind, DjKind::GeneralizedContact);
    }

    #[test]
    fn normal_forms_classify_and_gauge(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = cylinder_chart(1);
        let mut f = Shape::real(2, 3).scalar(&mut rng, 3);
        // Normal forms use functions of (x, y).
        f = f.reindex(&[0, 1, 2], 3);
        let f = dj_scalar::substitute(&f, &c, &[("u".into(), dj_scalar::Rational::from_integer(0.into()))]).unwrap().0.reindex(&[1, 2], 3);
        let t = AcQuadruple::normal_form(&c, &f);
        prop_assert!(check_nacs(&t).passed());
        let g = Shape::real(2, 2).scalar(&mut rng, 3);
        prop_assert!(check_dl_complex(&t.gauge_transform(&g).to_phi()).passed());
    }

    #[test]
    fn l_jz_is_dirac_jacobi_of_hom_gc_type(scale in 1i64..=3, shift in -2i64..=2) {
        let c = complex_chart(1);
        let mut h = hgc_complex_on(&c);
        // Translations along any constant vector keep A_can homogeneous.
        h.z = dv(&c, "x").scale(&int(&c, scale)).add(&dv(&c, "y").scale(&int(&c, shift)));
        prop_assert!(check_hom_gc(&h).unwrap().passed());
        let l = build_l_jz(&h).unwrap();
        prop_assert!(check_isotropic(&l).passed());
        prop_assert!(check_involutive(&l).unwrap().passed());
        prop_assert_eq!(classify_dj(&l).unwrap().kind, DjKind::HomGC);
    }
}
