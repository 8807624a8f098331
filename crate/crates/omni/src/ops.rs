use std::sync::Arc;

use dj_atiyah::{AtiyahForm, Derivation, Jet};
use dj_cartan::{contract, ensure_same_chart, GeomError, Multivector, Report, VectorField};
use dj_scalar::{default_samples, linalg, substitute, CScalar, Chart, Rational, DEFAULT_SEED};

use crate::error::{OmniError, OmniResult};
use crate::frame::{render_point, Frame, DEFAULT_EXTRA_SAMPLES};
use crate::section::OmniSection;

/// Sharp map of a Jacobi pair:
/// `J#(eta + f j) = (Lambda(eta, -) - f E, eta(E))`.
pub fn jacobi_sharp(lambda: &Multivector, e: &VectorField, psi: &Jet) -> Derivation {
    assert_eq!(lambda.deg(), 2, "Jacobi bivector must have degree two");
    let x = VectorField::from_multivector(&contract(lambda, &psi.eta)).sub(&e.scale(&psi.g));
    Derivation::new(x, e.pair(&psi.eta))
}

/// Graph `{(J# psi, psi)}` of a Jacobi pair.
pub fn graph_jacobi(lambda: &Multivector, e: &VectorField) -> Frame {
    let chart = e.chart().clone();
    let gens = Jet::coframe(&chart).into_iter().map(|psi| OmniSection::new(jacobi_sharp(lambda, e, &psi), psi)).collect();
    Frame::new(&chart, gens)
}

/// Graph `{(Delta, i_Delta B)}` of an Atiyah 2-form.
pub fn graph_atiyah(b: &AtiyahForm) -> OmniResult<Frame> {
    if b.deg() != 2 {
        return Err(GeomError::DegreeMismatch("graph needs an Atiyah 2-form".into()).into());
    }
    let chart = b.chart().clone();
    let gens = Derivation::frame(&chart)
        .into_iter()
        .map(|d| {
            let psi = b.flat(&d)?;
            Ok(OmniSection::new(d, psi))
        })
        .collect::<OmniResult<Vec<_>>>()?;
    Ok(Frame::new(&chart, gens))
}

/// Pairwise isotropy of the generators and maximality of the rank.
pub fn check_isotropic(f: &Frame) -> Report {
    let mut rep = Report::new();
    let gens = f.generators();
    let mut witness = None;
    'outer: for i in 0..gens.len() {
        for j in i..gens.len() {
            let v = gens[i].pair(&gens[j]);
            if !v.is_zero() {
                witness = Some(format!("<<g{}, g{}>> = {}", i + 1, j + 1, v.render(f.chart().names())));
                break 'outer;
            }
        }
    }
    match witness {
        None => rep.pass("isotropic"),
        Some(w) => rep.fail("isotropic", w),
    }
    let r = f.rank();
    let full = f.dim() + 1;
    rep.record("maximal rank", r == full, || format!("rank {r}, expected {full}"));
    rep
}

/// Involutivity of a maximal isotropic frame, via the tensor
/// `(a, b, c) -> <<a, [[b, c]]>>` on generators.
pub fn check_involutive(f: &Frame) -> OmniResult<Report> {
    if !check_isotropic(f).passed() {
        return Err(OmniError::PreconditionNotMaximalIsotropic);
    }
    let gens = f.reduced().generators().to_vec();
    let names = f.chart().names();
    let mut rep = Report::new();
    for j in 0..gens.len() {
        for k in 0..gens.len() {
            let br = gens[j].dorfman(&gens[k]);
            for (i, g) in gens.iter().enumerate() {
                let v = g.pair(&br);
                if !v.is_zero() {
                    rep.fail(
                        "involutive",
                        format!("<<g{}, [[g{}, g{}]]>> = {}", i + 1, j + 1, k + 1, v.render(names)),
                    );
                    return Ok(rep);
                }
            }
        }
    }
    rep.pass("involutive");
    Ok(rep)
}

fn solve_projection(f: &Frame, dlt: &Derivation) -> OmniResult<Jet> {
    ensure_same_chart(f.chart(), dlt.chart())?;
    let a = f.derivation_matrix();
    let (x, _) = match linalg::solve(&a, &dlt.components(), f.dim()) {
        Ok(s) => s,
        Err(dj_scalar::ScalarError::InconsistentSystem) => return Err(OmniError::NotInProjection),
        Err(e) => return Err(e.into()),
    };
    Ok(f.generators().iter().zip(&x).fold(Jet::zero(f.chart()), |acc, (g, c)| acc.add(&g.psi.scale(c))))
}

/// Canonical 2-form on the projection of an isotropic frame:
/// `varpi(Delta, Nabla) = <psi, Nabla>` for any `(Delta, psi)` in the frame.
pub fn varpi(f: &Frame, dlt: &Derivation, nabla: &Derivation) -> OmniResult<CScalar> {
    ensure_same_chart(f.chart(), nabla.chart())?;
    let psi = solve_projection(f, dlt)?;
    if solve_projection(f, nabla).is_err() {
        return Err(OmniError::NotInProjection);
    }
    Ok(psi.pair(nabla))
}

fn check_smooth(f: &Frame) -> OmniResult<()> {
    let full = f.dim() + 1;
    let r = f.rank();
    if r != full {
        return Err(OmniError::RankDeficient { rank: r, expected: full, at: None });
    }
    let norm = f.normalized();
    for p in f.samples() {
        let rp = norm.rank_at(p)?;
        if rp != full {
            return Err(OmniError::RankDeficient { rank: rp, expected: full, at: Some(render_point(f.chart(), p)) });
        }
    }
    Ok(())
}

/// Product `{(Delta, psi1 + psi2) : (Delta, psi_i) in F_i}`.
pub fn star(f1: &Frame, f2: &Frame) -> OmniResult<Frame> {
    ensure_same_chart(f1.chart(), f2.chart())?;
    let chart = f1.chart().clone();
    let (a, b) = (f1.reduced(), f2.reduced());
    let (m1, m2) = (a.len(), b.len());
    let d1 = a.derivation_matrix();
    let d2 = b.derivation_matrix();
    let block: Vec<Vec<CScalar>> = d1
        .iter()
        .zip(&d2)
        .map(|(r1, r2)| r1.iter().cloned().chain(r2.iter().map(|c| -c)).collect())
        .collect();
    let ker = linalg::kernel(&block, m1 + m2, chart.dim());
    let gens = ker
        .iter()
        .map(|c| {
            let s1 = a.generators().iter().zip(&c[..m1]).fold(OmniSection::zero(&chart), |acc, (g, ci)| acc.add(&g.scale(ci)));
            let s2 = b.generators().iter().zip(&c[m1..]).fold(Jet::zero(&chart), |acc, (g, ci)| acc.add(&g.psi.scale(ci)));
            OmniSection::new(s1.d, s1.psi.add(&s2))
        })
        .collect();
    let out = Frame::new(&chart, gens).with_samples(f1.samples().to_vec()).reduced();
    check_smooth(&out)?;
    Ok(out)
}

fn index_map(small: &Chart, big: &Chart) -> OmniResult<Vec<usize>> {
    small
        .names()
        .iter()
        .map(|n| big.index_of(n).map_err(|_| GeomError::ChartMismatch(format!("coordinate '{n}' missing from the product")).into()))
        .collect()
}

fn lift_section(g: &OmniSection, map: &[usize], big: &Arc<Chart>) -> OmniSection {
    let nb = big.dim();
    let ns = g.dim();
    let lift = |c: &CScalar| c.reindex(map, nb);
    let comps = g.components();
    let mut out = vec![CScalar::zero(nb); 2 * (nb + 1)];
    for i in 0..ns {
        out[map[i]] = lift(&comps[i]);
        out[nb + 1 + map[i]] = lift(&comps[ns + 1 + i]);
    }
    out[nb] = lift(&comps[ns]);
    out[2 * nb + 1] = lift(&comps[2 * ns + 1]);
    OmniSection::from_components(big, &out)
}

/// Backward image along the projection of a product chart onto one factor.
pub fn backward_projection(f: &Frame, product: &Arc<Chart>) -> OmniResult<Frame> {
    let map = index_map(f.chart(), product)?;
    let mut gens: Vec<OmniSection> = f.generators().iter().map(|g| lift_section(g, &map, product)).collect();
    for b in 0..product.dim() {
        if !map.contains(&b) {
            gens.push(OmniSection::derivation(Derivation::coordinate(product, b)));
        }
    }
    Ok(Frame::new(product, gens))
}

/// Backward image along the inclusion of the coordinate subspace where the
/// `normal` coordinates vanish.
pub fn backward_embedding(f: &Frame, normal: &[&str]) -> OmniResult<Frame> {
    if normal.is_empty() {
        return Ok(f.clone());
    }
    let chart = f.chart().clone();
    let n = chart.dim();
    let normal_idx: Vec<usize> = normal.iter().map(|s| chart.index_of(s)).collect::<Result<_, _>>()?;
    let kept: Vec<usize> = (0..n).filter(|i| !normal_idx.contains(i)).collect();
    if kept.is_empty() {
        return Err(GeomError::DimensionMismatch("cannot restrict to a point".into()).into());
    }
    let bindings: Vec<(String, Rational)> = normal.iter().map(|s| (s.to_string(), Rational::from_integer(0.into()))).collect();
    let norm = f.normalized();
    let mut sub = None;
    let mut restricted: Vec<Vec<CScalar>> = Vec::new();
    for g in norm.generators() {
        let mut col = Vec::new();
        for c in g.components() {
            let (v, small) = substitute(&c, &chart, &bindings)?;
            sub.get_or_insert(small);
            col.push(v);
        }
        restricted.push(col);
    }
    let small = sub.unwrap_or(Chart::new(&kept.iter().map(|&i| chart.names()[i].clone()).collect::<Vec<_>>())?);
    let ns = small.dim();
    let m = restricted.len();
    // Normal components of the symbols must cancel.
    let normal_block: Vec<Vec<CScalar>> = normal_idx.iter().map(|&b| restricted.iter().map(|c| c[b].clone()).collect()).collect();
    let r = linalg::rank(&normal_block);
    let samples = default_samples(ns, DEFAULT_EXTRA_SAMPLES, DEFAULT_SEED);
    for p in &samples {
        let rp = linalg::rank_at(&normal_block, p)?;
        if rp != r {
            return Err(OmniError::CleanIntersectionFailed(render_point(&small, p)));
        }
    }
    let ker = linalg::kernel(&normal_block, m, ns);
    let tangent = |c: &[CScalar]| -> OmniSection {
        let mut out = Vec::with_capacity(2 * (ns + 1));
        out.extend(kept.iter().map(|&i| c[i].clone()));
        out.push(c[n].clone());
        out.extend(kept.iter().map(|&i| c[n + 1 + i].clone()));
        out.push(c[2 * n + 1].clone());
        OmniSection::from_components(&small, &out)
    };
    let gens = ker
        .iter()
        .map(|k| {
            restricted
                .iter()
                .zip(k)
                .fold(OmniSection::zero(&small), |acc, (col, ki)| acc.add(&tangent(col).scale(ki)))
        })
        .collect();
    Ok(Frame::new(&small, gens).reduced())
}

/// Flat product on `A x B`: the star product of both backward projections.
pub fn flat_product(f1: &Frame, f2: &Frame) -> OmniResult<Frame> {
    let product = Chart::product(f1.chart(), f2.chart())
        .ok_or_else(|| GeomError::ChartMismatch("factors share a coordinate name".into()))?;
    let a = backward_projection(f1, &product)?;
    let b = backward_projection(f2, &product)?;
    star(&a, &b)
}


/// Pull back an Atiyah form along the projection of a product chart onto
/// the chart of the form.
pub fn pull_back(b: &AtiyahForm, product: &Arc<Chart>) -> OmniResult<AtiyahForm> {
    let map = index_map(b.chart(), product)?;
    let nb = product.dim();
    let lift = |c: &CScalar| c.reindex(&map, nb);
    let w0 = b.w0.transport(product, &map, lift);
    let w1 = b.w1.transport(product, &map, lift);
    Ok(AtiyahForm::new(b.deg(), w0, w1)?)
}
