use crate::error::ScalarError;
use crate::field::Field;
use crate::gcd::gcd;
use crate::poly::MPoly;

/// Rational function in canonical form: numerator and denominator coprime,
/// denominator with leading coefficient one, zero represented as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc<F> {
    num: MPoly<F>,
    den: MPoly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn zero(nvars: usize) -> Self {
        RatFunc { num: MPoly::zero(nvars), den: MPoly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        RatFunc { num: MPoly::constant(nvars, c), den: MPoly::one(nvars) }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        RatFunc { num: MPoly::var(nvars, i), den: MPoly::one(nvars) }
    }

    pub fn from_poly(p: MPoly<F>) -> Self {
        let n = p.nvars();
        RatFunc { num: p, den: MPoly::one(n) }
    }

    /// Canonicalising constructor.
    pub fn new(num: MPoly<F>, den: MPoly<F>) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZeroFunction);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MPoly<F>, den: MPoly<F>) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        if let Some(c) = den.constant_value() {
            return RatFunc { num: num.scale(&c.inv()), den: MPoly::one(n) };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Self::normalise_den(num, den)
    }

    fn normalise_den(num: MPoly<F>, den: MPoly<F>) -> Self {
        let lc = den.lc();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn num(&self) -> &MPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &MPoly<F> {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<F> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.add(&o.num), den: self.den.clone() };
        }
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        // With one side polynomial the result is already reduced.
        if o.den.is_one() {
            return RatFunc { num: self.num.add(&o.num.mul(&self.den)), den: self.den.clone() };
        }
        if self.den.is_one() {
            return RatFunc { num: o.num.add(&self.num.mul(&o.den)), den: o.den.clone() };
        }
        let g = gcd(&self.den, &o.den);
        let bd = self.den.div_exact(&g).unwrap();
        let dd = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&dd).add(&o.num.mul(&bd));
        let den = self.den.mul(&dd);
        Self::reduce(num, den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars());
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.mul(&o.num), den: self.den.clone() };
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let a = if g1.is_one() { self.num.clone() } else { self.num.div_exact(&g1).unwrap() };
        let d = if g1.is_one() { o.den.clone() } else { o.den.div_exact(&g1).unwrap() };
        let c = if g2.is_one() { o.num.clone() } else { o.num.div_exact(&g2).unwrap() };
        let b = if g2.is_one() { self.den.clone() } else { self.den.div_exact(&g2).unwrap() };
        Self::normalise_den(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZeroFunction);
        }
        Ok(Self::normalise_den(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn derivative(&self, v: usize) -> Self {
        if self.den.is_one() {
            return RatFunc { num: self.num.derivative(v), den: self.den.clone() };
        }
        let a1 = self.num.derivative(v);
        let b1 = self.den.derivative(v);
        if b1.is_zero() {
            return Self::reduce(a1, self.den.clone());
        }
        let num = a1.mul(&self.den).sub(&self.num.mul(&b1));
        Self::reduce(num, self.den.mul(&self.den))
    }

    pub fn eval(&self, point: &[F]) -> Result<F, ScalarError> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(ScalarError::DenominatorVanishes);
        }
        Ok(self.num.eval(point).div_ref(&d))
    }

    pub fn map_polys(&self, f: impl Fn(&MPoly<F>) -> MPoly<F>) -> Result<Self, ScalarError> {
        Self::new(f(&self.num), f(&self.den))
    }

    /// Rename variables injectively; coprimality is preserved so only the
    /// denominator normalisation is redone.
    pub fn reindex(&self, map: &[usize], new_n: usize) -> Self {
        Self::normalise_den(self.num.reindex(map, new_n), self.den.reindex(map, new_n))
    }

    /// Substitute polynomials for the variables.
    pub fn substitute(&self, images: &[MPoly<F>], new_n: usize) -> Result<Self, ScalarError> {
        let den = self.den.substitute(images, new_n);
        if den.is_zero() {
            return Err(ScalarError::DenominatorVanishes);
        }
        Self::new(self.num.substitute(images, new_n), den)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.den.is_one() {
            return self.num.render(names);
        }
        format!("({})/({})", self.num.render(names), self.den.render(names))
    }
}
