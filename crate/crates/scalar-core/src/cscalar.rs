use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::BigRational;

use crate::error::ScalarError;
use crate::field::{Field, QI};
use crate::gcd::lcm;
use crate::poly::MPoly;
use crate::ratfunc::RatFunc;

/// Real scalar: rational function with rational coefficients.
pub type Scalar = RatFunc<BigRational>;
/// Real polynomial with rational coefficients.
pub type Poly = MPoly<BigRational>;
/// Polynomial with Gaussian rational coefficients.
pub type CPoly = MPoly<QI>;

/// Complex scalar `re + i im` with real rational-function parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl CScalar {
    pub fn zero(n: usize) -> Self {
        CScalar { re: Scalar::zero(n), im: Scalar::zero(n) }
    }

    pub fn one(n: usize) -> Self {
        CScalar { re: Scalar::one(n), im: Scalar::zero(n) }
    }

    pub fn i(n: usize) -> Self {
        CScalar { re: Scalar::zero(n), im: Scalar::one(n) }
    }

    pub fn int(n: usize, v: i64) -> Self {
        Self::real(Scalar::constant(n, <BigRational as Field>::from_i64(v)))
    }

    pub fn rational(n: usize, q: BigRational) -> Self {
        Self::real(Scalar::constant(n, q))
    }

    pub fn constant(n: usize, c: &QI) -> Self {
        CScalar { re: Scalar::constant(n, c.re.clone()), im: Scalar::constant(n, c.im.clone()) }
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::real(Scalar::var(n, i))
    }

    pub fn real(re: Scalar) -> Self {
        let n = re.nvars();
        CScalar { re, im: Scalar::zero(n) }
    }

    pub fn new(re: Scalar, im: Scalar) -> Self {
        CScalar { re, im }
    }

    pub fn from_poly(p: &Poly) -> Self {
        Self::real(Scalar::from_poly(p.clone()))
    }

    pub fn from_cpoly(p: &CPoly) -> Self {
        let re = p.map_coeffs(|c| c.re.clone());
        let im = p.map_coeffs(|c| c.im.clone());
        CScalar { re: Scalar::from_poly(re), im: Scalar::from_poly(im) }
    }

    pub fn nvars(&self) -> usize {
        self.re.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.re.is_polynomial() && self.im.is_polynomial()
    }

    pub fn constant_value(&self) -> Option<QI> {
        Some(Complex::new(self.re.constant_value()?, self.im.constant_value()?))
    }

    pub fn conj(&self) -> Self {
        CScalar { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn scale_q(&self, c: &BigRational) -> Self {
        CScalar { re: self.re.scale(c), im: self.im.scale(c) }
    }

    pub fn scale_qi(&self, c: &QI) -> Self {
        if Field::is_zero(&c.im) {
            return self.scale_q(&c.re);
        }
        let re = self.re.scale(&c.re).sub(&self.im.scale(&c.im));
        let im = self.re.scale(&c.im).add(&self.im.scale(&c.re));
        CScalar { re, im }
    }

    /// Multiply by the imaginary unit.
    pub fn times_i(&self) -> Self {
        CScalar { re: self.im.neg(), im: self.re.clone() }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZeroFunction);
        }
        if self.im.is_zero() {
            return Ok(CScalar::real(self.re.inv()?));
        }
        if self.re.is_zero() {
            return Ok(CScalar { re: Scalar::zero(self.nvars()), im: self.im.inv()?.neg() });
        }
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let ninv = norm.inv()?;
        Ok(CScalar { re: self.re.mul(&ninv), im: self.im.neg().mul(&ninv) })
    }

    pub fn div(&self, o: &Self) -> Result<Self, ScalarError> {
        if o.im.is_zero() {
            if o.re.is_zero() {
                return Err(ScalarError::DivisionByZeroFunction);
            }
            return Ok(CScalar { re: self.re.div(&o.re)?, im: self.im.div(&o.re)? });
        }
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CScalar::one(self.nvars());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> Self {
        CScalar { re: self.re.derivative(v), im: self.im.derivative(v) }
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<QI, ScalarError> {
        Ok(Complex::new(self.re.eval(point)?, self.im.eval(point)?))
    }

    /// Evaluate at a point with Gaussian rational coordinates.
    pub fn eval_qi(&self, point: &[QI]) -> Result<QI, ScalarError> {
        let lift = |s: &Scalar| -> Result<QI, ScalarError> {
            let num = s.num().map_coeffs(|c| QI::from_rational(c.clone()));
            let den = s.den().map_coeffs(|c| QI::from_rational(c.clone()));
            let d = den.eval(point);
            if Field::is_zero(&d) {
                return Err(ScalarError::DenominatorVanishes);
            }
            Ok(num.eval(point).div_ref(&d))
        };
        let re = lift(&self.re)?;
        let im = lift(&self.im)?;
        Ok(re.add_ref(&im.mul_ref(&Complex::new(<BigRational as Field>::zero(), <BigRational as Field>::one()))))
    }

    /// Apply the same polynomial map to numerators and denominators of both
    /// parts.
    pub fn map_polys(&self, f: impl Fn(&Poly) -> Poly) -> Result<Self, ScalarError> {
        Ok(CScalar { re: self.re.map_polys(&f)?, im: self.im.map_polys(&f)? })
    }

    /// Rename variables injectively into a ring with `new_n` variables.
    pub fn reindex(&self, map: &[usize], new_n: usize) -> Self {
        CScalar { re: self.re.reindex(map, new_n), im: self.im.reindex(map, new_n) }
    }

    /// Substitute real polynomials for the variables.
    pub fn substitute(&self, images: &[Poly], new_n: usize) -> Result<Self, ScalarError> {
        Ok(CScalar { re: self.re.substitute(images, new_n)?, im: self.im.substitute(images, new_n)? })
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.im.is_zero() {
            return self.re.render(names);
        }
        let im = if self.im.is_one() {
            "I".to_string()
        } else {
            format!("I*({})", self.im.render(names))
        };
        if self.re.is_zero() {
            im
        } else {
            format!("{} + {}", self.re.render(names), im)
        }
    }
}

impl<'a> Add<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn add(self, o: &CScalar) -> CScalar {
        CScalar { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }
}

impl<'a> Sub<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn sub(self, o: &CScalar) -> CScalar {
        CScalar { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }
}

impl<'a> Mul<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn mul(self, o: &CScalar) -> CScalar {
        if self.im.is_zero() && o.im.is_zero() {
            return CScalar::real(self.re.mul(&o.re));
        }
        if self.im.is_zero() {
            return CScalar { re: self.re.mul(&o.re), im: self.re.mul(&o.im) };
        }
        if o.im.is_zero() {
            return CScalar { re: self.re.mul(&o.re), im: self.im.mul(&o.re) };
        }
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        CScalar { re, im }
    }
}

impl<'a> Neg for &'a CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar { re: self.re.neg(), im: self.im.neg() }
    }
}

impl Add for CScalar {
    type Output = CScalar;
    fn add(self, o: CScalar) -> CScalar {
        &self + &o
    }
}

impl Sub for CScalar {
    type Output = CScalar;
    fn sub(self, o: CScalar) -> CScalar {
        &self - &o
    }
}

impl Mul for CScalar {
    type Output = CScalar;
    fn mul(self, o: CScalar) -> CScalar {
        &self * &o
    }
}

impl Neg for CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        -&self
    }
}

impl fmt::Display for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

/// Clear denominators of a row of complex scalars: returns polynomials over
/// Q(i) proportional to the inputs by one common nonzero real factor.
pub fn clear_row(row: &[CScalar]) -> Vec<CPoly> {
    let n = row.first().map(|c| c.nvars()).unwrap_or(0);
    let mut l = Poly::one(n);
    for c in row {
        for part in [&c.re, &c.im] {
            if !part.den().is_one() {
                l = lcm(&l, part.den());
            }
        }
    }
    row.iter()
        .map(|c| {
            let part = |s: &Scalar| -> Poly {
                if s.is_zero() {
                    Poly::zero(n)
                } else {
                    s.num().mul(&l.div_exact(s.den()).expect("lcm divisible"))
                }
            };
            let re = part(&c.re).map_coeffs(|q| QI::from_rational(q.clone()));
            let im = part(&c.im).map_coeffs(|q| Complex::new(<BigRational as Field>::zero(), q.clone()));
            re.add(&im)
        })
        .collect()
}
