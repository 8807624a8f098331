//! Type of a complex Dirac-Jacobi structure: generalized contact,
//! homogeneous generalized complex, or neither.

use dj_cartan::Report;
use dj_omni::{check_involutive, check_isotropic, Frame, OmniSection};
use dj_scalar::{linalg, CScalar};

use crate::error::{StructError, StructResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DjKind {
    GeneralizedContact,
    HomGC,
    Neither,
}

impl DjKind {
    pub fn name(&self) -> &'static str {
        match self {
            DjKind::GeneralizedContact => "generalized_contact",
            DjKind::HomGC => "hom_gc",
            DjKind::Neither => "neither",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub kind: DjKind,
    /// Generic rank of the intersection with the conjugate structure.
    pub real_rank: usize,
    /// Real generator of the intersection when it has rank one.
    pub real_section: Option<OmniSection>,
}

fn real_part(s: &OmniSection) -> OmniSection {
    let sum = s.add(&s.conj());
    let v = if sum.is_zero() { s.sub(&s.conj()).scale(&CScalar::i(s.dim())) } else { sum };
    OmniSection::from_components(s.chart(), &linalg::primitive_row(&v.components()))
}

pub fn classify_dj(f: &Frame) -> StructResult<Classification> {
    let iso = check_isotropic(f);
    if !iso.passed() {
        return Err(StructError::PreconditionFailed(failure_text(&iso)));
    }
    let inv = check_involutive(f)?;
    if !inv.passed() {
        return Err(StructError::PreconditionFailed(failure_text(&inv)));
    }
    let chart = f.chart().clone();
    let n = chart.dim();
    let inter = Frame::new(&chart, f.intersect_conj()).with_samples(f.samples().to_vec());
    let r = inter.rank();
    if r == 0 {
        return Ok(Classification { kind: DjKind::GeneralizedContact, real_rank: 0, real_section: None });
    }
    if r == 1 {
        let both = Frame::new(&chart, f.generators().iter().chain(f.conj().generators()).cloned().collect());
        let proj_rank = linalg::rank(&both.derivation_matrix());
        let s = real_part(&inter.reduced().generators()[0]);
        let mut nonvanishing = !s.d.f.is_zero();
        for p in f.samples() {
            nonvanishing = nonvanishing && !dj_scalar::Field::is_zero(&s.d.f.eval(p)?);
        }
        let kind = if proj_rank == n + 1 && nonvanishing { DjKind::HomGC } else { DjKind::Neither };
        return Ok(Classification { kind, real_rank: 1, real_section: Some(s) });
    }
    Ok(Classification { kind: DjKind::Neither, real_rank: r, real_section: None })
}

fn failure_text(r: &Report) -> String {
    r.failures()
        .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))
        .collect::<Vec<_>>()
        .join("; ")
}
