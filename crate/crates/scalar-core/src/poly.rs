use std::cmp::Ordering;
use std::collections::HashMap;

use smallvec::SmallVec;

use crate::field::Field;

/// Exponent vector of a monomial.
///
/// Ordering is graded lexicographic: higher total degree is larger, ties are
/// broken lexicographically with the first variable most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.0[i] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self.divides(o)`.
    pub fn quotient_of(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| b - a).collect())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial; terms are kept in strictly descending
/// monomial order with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly<F> {
    nvars: usize,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> MPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            MPoly { nvars, terms: vec![(Monomial::one(nvars), c)] }
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        MPoly { nvars, terms: vec![(Monomial::var(nvars, i), F::one())] }
    }

    pub fn monomial(m: Monomial, c: F) -> Self {
        let nvars = m.0.len();
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            MPoly { nvars, terms: vec![(m, c)] }
        }
    }

    /// Build from arbitrary terms; duplicates are combined and zeros dropped.
    pub fn from_terms(nvars: usize, mut raw: Vec<(Monomial, F)>) -> Self {
        raw.sort_by(|a, b| b.0.cmp(&a.0));
        let mut terms: Vec<(Monomial, F)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            debug_assert_eq!(m.0.len(), nvars);
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => lc.add_assign_ref(&c),
                _ => {
                    if let Some((_, lc)) = terms.last() {
                        if lc.is_zero() {
                            terms.pop();
                        }
                    }
                    terms.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = terms.last() {
            if lc.is_zero() {
                terms.pop();
            }
        }
        MPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<F> {
        if self.terms.is_empty() {
            Some(F::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    pub fn lc(&self) -> F {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.iter().map(|t| t.0 .0[v]).max().unwrap_or(0)
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.iter().any(|t| t.0 .0[v] > 0)
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul_ref(c))).collect(),
        }
    }

    /// Multiply by `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), b.mul_ref(c))).collect(),
        }
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.nvars, o.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate { cb.neg_ref() } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca.sub_ref(cb) } else { ca.add_ref(cb) };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (m, c) in &o.terms[j..] {
            out.push((m.clone(), if negate { c.neg_ref() } else { c.clone() }));
        }
        MPoly { nvars: self.nvars, terms: out }
    }

    pub fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        self.merge(o, true)
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.nvars, o.nvars);
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars);
        }
        if self.is_monomial() {
            let (m, c) = &self.terms[0];
            return o.mul_term(m, c);
        }
        if o.is_monomial() {
            let (m, c) = &o.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.len() * o.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca.mul_ref(cb);
                match acc.get_mut(&m) {
                    Some(e) => e.add_assign_ref(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        MPoly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[v] = e - 1;
            terms.push((m2, c.mul_ref(&F::from_i64(e as i64))));
        }
        // Differentiation by one variable preserves the relative order of
        // surviving terms only within a fixed exponent of `v`; resort.
        MPoly::from_terms(self.nvars, terms)
    }

    /// Evaluate at a point given by field values for every variable.
    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let mut powers: Vec<Vec<F>> = vec![vec![F::one()]; self.nvars];
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let row = &mut powers[v];
                while row.len() <= e as usize {
                    let next = row.last().unwrap().mul_ref(&point[v]);
                    row.push(next);
                }
                t = t.mul_ref(&row[e as usize]);
            }
            acc.add_assign_ref(&t);
        }
        acc
    }

    /// Map coefficients into another field.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> MPoly<G> {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let g = f(c);
                if g.is_zero() {
                    None
                } else {
                    Some((m.clone(), g))
                }
            })
            .collect();
        MPoly { nvars: self.nvars, terms }
    }

    /// Rename variables: old variable `i` becomes new variable `map[i]` in a
    /// ring with `new_n` variables.
    pub fn reindex(&self, map: &[usize], new_n: usize) -> Self {
        assert_eq!(map.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e: SmallVec<[u16; 8]> = SmallVec::from_elem(0, new_n);
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        MPoly::from_terms(new_n, terms)
    }

    /// Substitute a polynomial (in a ring with `new_n` variables) for every
    /// variable.
    pub fn substitute(&self, images: &[MPoly<F>], new_n: usize) -> MPoly<F> {
        assert_eq!(images.len(), self.nvars);
        let mut cache: Vec<Vec<MPoly<F>>> = vec![vec![MPoly::one(new_n)]; self.nvars];
        let mut acc = MPoly::zero(new_n);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(new_n, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[v].len() <= e as usize {
                    let next = cache[v].last().unwrap().mul(&images[v]);
                    cache[v].push(next);
                }
                t = t.mul(&cache[v][e as usize]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Coefficients with respect to variable `v`: entry `k` is the coefficient
    /// of `v^k`, as a polynomial in the same ring not involving `v`.
    pub fn coeffs_in(&self, v: usize) -> Vec<MPoly<F>> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[v] as usize;
            let mut m2 = m.clone();
            m2.0[v] = 0;
            buckets[e].push((m2, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| {
                // Removing a single variable from a sorted list keeps the
                // bucket sorted only in degree-compatible cases; normalise.
                MPoly::from_terms(self.nvars, t)
            })
            .collect()
    }

    /// Leading coefficient with respect to variable `v`.
    pub fn lc_in(&self, v: usize) -> MPoly<F> {
        let d = self.degree_in(v);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[v] == d)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2.0[v] = 0;
                (m2, c.clone())
            })
            .collect();
        MPoly::from_terms(self.nvars, terms)
    }

    /// Normalise so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.inv())
    }

    /// Exact division; `None` when `o` does not divide `self`.
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        assert!(!o.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if o.is_constant() {
            return Some(self.scale(&o.terms[0].1.inv()));
        }
        if o.is_monomial() {
            let (om, oc) = &o.terms[0];
            let inv = oc.inv();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !om.divides(m) {
                    return None;
                }
                terms.push((om.quotient_of(m), c.mul_ref(&inv)));
            }
            return Some(MPoly { nvars: self.nvars, terms });
        }
        let (olm, olc) = o.terms[0].clone();
        let inv = olc.inv();
        let mut q: Vec<(Monomial, F)> = Vec::new();
        let mut r = self.clone();
        while let Some((lm, lc)) = r.terms.first().cloned() {
            if !olm.divides(&lm) {
                return None;
            }
            let tm = olm.quotient_of(&lm);
            let tc = lc.mul_ref(&inv);
            r = r.sub(&o.mul_term(&tm, &tc));
            q.push((tm, tc));
        }
        Some(MPoly { nvars: self.nvars, terms: q })
    }

    /// Minimum exponents over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some(t) => t.0.clone(),
            None => return Monomial::one(self.nvars),
        };
        it.fold(first, |acc, t| acc.gcd(&t.0))
    }

    /// Render using the given variable names, in a syntax accepted by the
    /// document parser.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_literal();
            let mag = if neg { c.neg_ref() } else { c.clone() };
            let mono = render_monomial(m, names);
            let body = if mono.is_empty() {
                mag.render().0
            } else if mag.is_one() {
                mono
            } else {
                let (s, atomic) = mag.render();
                if atomic || !s.contains('+') {
                    format!("{s}*{mono}")
                } else {
                    format!("({s})*{mono}")
                }
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

fn render_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}
