use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact coefficient field for polynomials and rational functions.
///
/// The by-reference methods exist so that hot loops can avoid cloning
/// big-integer payloads.
pub trait Field: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: BigRational) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    /// Division; `o` must be nonzero.
    fn div_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn add_assign_ref(&mut self, o: &Self) {
        *self = self.add_ref(o);
    }
    fn inv(&self) -> Self {
        Self::one().div_ref(self)
    }
    /// Render as a DSL-compatible literal. `atomic` is true when the text may
    /// be juxtaposed with `*` without parentheses.
    fn render(&self) -> (String, bool);
    /// Whether the rendered literal starts with a minus sign.
    fn is_negative_literal(&self) -> bool;
    /// Image under reduction modulo the prime [`MODP`], sending the imaginary
    /// unit to [`MODP_I`]. `None` when a denominator vanishes modulo the prime.
    fn to_modp(&self) -> Option<u64>;
}

/// Prime used for modular degree bounds; it is 1 mod 4 so that -1 is a square.
pub const MODP: u64 = 1_000_000_009;
/// A square root of -1 modulo [`MODP`].
pub const MODP_I: u64 = modp_sqrt_minus_one();

const fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

const fn modp_sqrt_minus_one() -> u64 {
    // c^((p-1)/4) squares to -1 whenever c is a non-residue.
    let mut c = 2;
    loop {
        let r = powmod(c, (MODP - 1) / 4, MODP);
        if (r as u128 * r as u128 % MODP as u128) as u64 == MODP - 1 {
            return r;
        }
        c += 1;
    }
}

pub fn inv_modp(a: u64) -> u64 {
    powmod(a, MODP - 2, MODP)
}

fn bigint_modp(n: &BigInt) -> u64 {
    let p = BigInt::from(MODP);
    let mut r = n % &p;
    if r.is_negative() {
        r += &p;
    }
    u64::try_from(r).expect("residue fits")
}

fn rational_modp(q: &BigRational) -> Option<u64> {
    let d = bigint_modp(q.denom());
    if d == 0 {
        return None;
    }
    Some((bigint_modp(q.numer()) as u128 * inv_modp(d) as u128 % MODP as u128) as u64)
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(q: BigRational) -> Self {
        q
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_ref(&self, o: &Self) -> Self {
        self / o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn render(&self) -> (String, bool) {
        if self.denom().is_one() {
            (self.numer().to_string(), !self.is_negative())
        } else {
            (format!("{}/{}", self.numer(), self.denom()), false)
        }
    }
    fn is_negative_literal(&self) -> bool {
        self.is_negative()
    }
    fn to_modp(&self) -> Option<u64> {
        rational_modp(self)
    }
}

/// Gaussian rationals Q(i).
pub type QI = Complex<BigRational>;

impl Field for QI {
    fn zero() -> Self {
        Complex::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        Complex::new(One::one(), Zero::zero())
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(<BigRational as Field>::from_i64(v), Zero::zero())
    }
    fn from_rational(q: BigRational) -> Self {
        Complex::new(q, Zero::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn is_one(&self) -> bool {
        One::is_one(&self.re) && Zero::is_zero(&self.im)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_ref(&self, o: &Self) -> Self {
        if Zero::is_zero(&o.im) {
            Complex::new(&self.re / &o.re, &self.im / &o.re)
        } else {
            self / o
        }
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn render(&self) -> (String, bool) {
        let re_zero = Zero::is_zero(&self.re);
        let im_zero = Zero::is_zero(&self.im);
        if im_zero {
            return self.re.render();
        }
        let im = if One::is_one(&self.im) {
            "I".to_string()
        } else if One::is_one(&-self.im.clone()) {
            "-I".to_string()
        } else {
            let (s, _) = self.im.render();
            format!("{s}*I")
        };
        if re_zero {
            let atomic = !self.im.is_negative() && self.im.denom().is_one();
            (im, atomic)
        } else {
            let (r, _) = self.re.render();
            if self.im.is_negative() {
                (format!("({r}{im})"), true)
            } else {
                (format!("({r}+{im})"), true)
            }
        }
    }
    fn is_negative_literal(&self) -> bool {
        if Zero::is_zero(&self.im) {
            self.re.is_negative()
        } else {
            Zero::is_zero(&self.re) && self.im.is_negative()
        }
    }
    fn to_modp(&self) -> Option<u64> {
        let re = rational_modp(&self.re)?;
        let im = rational_modp(&self.im)?;
        Some(((re as u128 + im as u128 * MODP_I as u128) % MODP as u128) as u64)
    }
}

/// Convenience constructor for rationals.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor for Gaussian rationals.
pub fn qi(re: BigRational, im: BigRational) -> QI {
    Complex::new(re, im)
}
