//! Alternating tensors in a coordinate basis.
//!
//! Coefficients are stored against strictly increasing index tuples. The
//! same engine backs differential forms (covariant) and multivector fields
//! (contravariant); a marker type keeps the two apart.

use std::collections::BTreeMap;
use std::marker::PhantomData;
use std::sync::Arc;

use dj_scalar::{CScalar, Chart};
use smallvec::SmallVec;

use crate::error::{GeomError, GeomResult};

/// Strictly increasing coordinate indices.
pub type Idx = SmallVec<[u8; 8]>;

pub trait Variance: Clone + std::fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    const COVARIANT: bool;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Co;
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contra;

impl Variance for Co {
    const COVARIANT: bool = true;
}
impl Variance for Contra {
    const COVARIANT: bool = false;
}

#[derive(Clone, Debug)]
pub struct Alt<V: Variance> {
    chart: Arc<Chart>,
    deg: usize,
    terms: BTreeMap<Idx, CScalar>,
    _v: PhantomData<V>,
}

impl<V: Variance> PartialEq for Alt<V> {
    fn eq(&self, o: &Self) -> bool {
        // Zero tensors compare equal regardless of their nominal degree.
        self.chart == o.chart && (self.deg == o.deg || self.terms.is_empty()) && self.terms == o.terms
    }
}
impl<V: Variance> Eq for Alt<V> {}

/// Sort `idx` in place, returning the permutation sign, or `None` if an
/// index repeats.
pub fn sort_sign(idx: &mut [u8]) -> Option<i8> {
    let mut sign = 1i8;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

pub fn ensure_same_chart(a: &Chart, b: &Chart) -> GeomResult<()> {
    if a == b {
        Ok(())
    } else {
        Err(GeomError::ChartMismatch(format!(
            "({}) vs ({})",
            a.names().join(", "),
            b.names().join(", ")
        )))
    }
}

impl<V: Variance> Alt<V> {
    pub fn zero(chart: &Arc<Chart>, deg: usize) -> Self {
        Alt { chart: chart.clone(), deg, terms: BTreeMap::new(), _v: PhantomData }
    }

    /// Degree-zero element.
    pub fn scalar(chart: &Arc<Chart>, s: CScalar) -> Self {
        let mut a = Self::zero(chart, 0);
        if !s.is_zero() {
            a.terms.insert(Idx::new(), s);
        }
        a
    }

    /// Basis element for the given (not necessarily sorted) indices.
    pub fn basis(chart: &Arc<Chart>, idx: &[usize]) -> Self {
        let mut k: Idx = idx.iter().map(|&i| i as u8).collect();
        let mut a = Self::zero(chart, idx.len());
        if let Some(s) = sort_sign(&mut k) {
            let n = chart.dim();
            a.terms.insert(k, CScalar::int(n, s as i64));
        }
        a
    }

    /// Build from `(indices, coefficient)` pairs; indices may be unsorted.
    pub fn from_terms(chart: &Arc<Chart>, deg: usize, items: impl IntoIterator<Item = (Vec<usize>, CScalar)>) -> Self {
        let mut a = Self::zero(chart, deg);
        for (idx, c) in items {
            assert_eq!(idx.len(), deg, "index length must equal degree");
            let mut k: Idx = idx.iter().map(|&i| i as u8).collect();
            if let Some(s) = sort_sign(&mut k) {
                let c = if s < 0 { -&c } else { c };
                a.add_term(k, c);
            }
        }
        a
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn terms(&self) -> &BTreeMap<Idx, CScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, idx: &[usize]) -> CScalar {
        let mut k: Idx = idx.iter().map(|&i| i as u8).collect();
        match sort_sign(&mut k) {
            None => CScalar::zero(self.dim()),
            Some(s) => {
                let c = self.terms.get(&k).cloned().unwrap_or_else(|| CScalar::zero(self.dim()));
                if s < 0 {
                    -&c
                } else {
                    c
                }
            }
        }
    }

    /// Add `c` to the coefficient of the sorted index `k`.
    pub fn add_term(&mut self, k: Idx, c: CScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(e) => {
                let s = &*e + &c;
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    fn check(&self, o: &Self) {
        assert!(self.chart == o.chart, "chart mismatch in alternating tensor operation");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        assert_eq!(self.deg, o.deg, "degree mismatch in sum");
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &CScalar) -> Self {
        if s.is_zero() {
            return Self::zero(&self.chart, self.deg);
        }
        self.map_coeffs(|c| c * s)
    }

    pub fn map_coeffs(&self, f: impl Fn(&CScalar) -> CScalar) -> Self {
        let mut out = Self::zero(&self.chart, self.deg);
        for (k, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(k.clone(), v);
            }
        }
        out
    }

    pub fn try_map_coeffs<E>(&self, f: impl Fn(&CScalar) -> Result<CScalar, E>) -> Result<Self, E> {
        let mut out = Self::zero(&self.chart, self.deg);
        for (k, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                out.terms.insert(k.clone(), v);
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, o: &Self) -> Self {
        self.check(o);
        let mut out = Self::zero(&self.chart, self.deg + o.deg);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                let mut k: Idx = ka.iter().chain(kb.iter()).copied().collect();
                if let Some(s) = sort_sign(&mut k) {
                    let c = ca * cb;
                    out.add_term(k, if s < 0 { -&c } else { c });
                }
            }
        }
        out
    }

    /// Contract the first slot with a degree-one element of the opposite
    /// variance given by its components:
    /// `e_{i1..ik} -> sum_r (-1)^r c_{i_r} e_{I without i_r}`.
    pub fn contract_first(&self, comps: &[CScalar]) -> Self {
        assert!(self.deg >= 1 || self.terms.is_empty());
        let deg = self.deg.saturating_sub(1);
        let mut out = Self::zero(&self.chart, deg);
        for (k, c) in &self.terms {
            for r in 0..k.len() {
                let i = k[r] as usize;
                if comps[i].is_zero() {
                    continue;
                }
                let rest: Idx = k.iter().enumerate().filter(|&(j, _)| j != r).map(|(_, &x)| x).collect();
                let t = &comps[i] * c;
                out.add_term(rest, if r % 2 == 1 { -&t } else { t });
            }
        }
        out
    }

    /// Scalar value of a degree-zero element.
    pub fn scalar_part(&self) -> CScalar {
        self.terms.get(&Idx::new()).cloned().unwrap_or_else(|| CScalar::zero(self.dim()))
    }

    /// Move to a chart with the same number of coordinates after applying a
    /// coefficient map, used when re-expressing on renamed or extended charts.
    pub fn transport(&self, chart: &Arc<Chart>, index_map: &[usize], coeff: impl Fn(&CScalar) -> CScalar) -> Self {
        let mut out = Self::zero(chart, self.deg);
        for (k, c) in &self.terms {
            let mut nk: Idx = k.iter().map(|&i| index_map[i as usize] as u8).collect();
            let s = sort_sign(&mut nk).expect("index map is injective");
            let v = coeff(c);
            out.add_term(nk, if s < 0 { -&v } else { v });
        }
        out
    }

    /// Complex conjugate of every coefficient.
    pub fn conj(&self) -> Self {
        self.map_coeffs(|c| c.conj())
    }

    pub fn render(&self, basis: impl Fn(usize) -> String) -> String {
        let names = self.chart.names();
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in &self.terms {
            let b: Vec<String> = k.iter().map(|&i| basis(i as usize)).collect();
            let b = b.join("^");
            let coeff = c.render(names);
            parts.push(if b.is_empty() {
                format!("({coeff})")
            } else if c.is_one() {
                b
            } else {
                format!("({coeff})*{b}")
            });
        }
        parts.join(" + ")
    }
}

pub type Form = Alt<Co>;
pub type Multivector = Alt<Contra>;
