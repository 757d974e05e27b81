//! Arbitrary-precision rationals kept in lowest terms with a positive
//! denominator.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Option<Self> {
        let den = den.into();
        if den.is_zero() {
            return None;
        }
        Some(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn powi(&self, e: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, e))
    }

    /// Bit length of the larger of numerator and denominator.
    pub fn height_bits(&self) -> u64 {
        self.numer().bits().max(self.denom().bits())
    }

    /// Image in `Z/pZ`, or `None` when `p` divides the denominator.
    pub fn mod_u64(&self, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let den = self.denom().mod_floor(&pb).to_u64()?;
        if den == 0 {
            return None;
        }
        let num = self.numer().mod_floor(&pb).to_u64()?;
        let inv = inv_mod(den, p)?;
        Some(((num as u128 * inv as u128) % p as u128) as u64)
    }
}

/// Modular inverse by the extended Euclidean algorithm.
pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(p as i128) as u64)
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_int(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `n` or `n/d` with decimal integers.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(alloc::format!("invalid rational {s:?}"));
        let parse_int = |t: &str| BigInt::from_str(t.trim()).map_err(|_| bad());
        match s.split_once('/') {
            None => Ok(Rational::from_int(parse_int(s)?)),
            Some((n, d)) => Rational::new(parse_int(n)?, parse_int(d)?).ok_or_else(bad),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational($tr::$m(&self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational($tr::$m(self.0, rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational($tr::$m(self.0, &rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    /// Panics on division by zero.
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Field for Rational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        Rational::zero()
    }
    fn one(_: &()) -> Self {
        Rational::one()
    }
    fn from_i64(_: &(), n: i64) -> Self {
        Rational::from(n)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Homogeneous Horner over the integers with a single reduction:
    /// `f(p/q) = sum L c_i p^i q^(n-i) / (L q^n)`.
    fn eval_coeffs(coeffs: &[Self], x: &Self) -> Self {
        if coeffs.len() < 4 {
            return coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c);
        }
        IntegerPoly::new(coeffs).eval(x)
    }

    /// `outer(G / D) = (sum c_i G^i D^(n-i)) / D^n` over the integers.
    fn compose_coeffs(outer: &[Self], inner: &[Self]) -> Vec<Self> {
        if outer.len() <= 2 || inner.is_empty() {
            return compose_small(outer, inner);
        }
        let o = IntegerPoly::new(outer);
        let g = IntegerPoly::new(inner);
        let n = o.coeffs.len() - 1;
        // Horner in homogeneous form: acc = acc * G + c_i * D^(n-i).
        let mut acc: Vec<BigInt> = alloc::vec![o.coeffs[n].clone()];
        let mut dpow = BigInt::one();
        for i in (0..n).rev() {
            dpow *= &g.den;
            acc = int_mul(&acc, &g.coeffs);
            acc[0] += &o.coeffs[i] * &dpow;
        }
        IntegerPoly { coeffs: acc, den: o.den }.to_rationals(&dpow)
    }

    /// Product tree over `q x - p`, divided by `prod q` at the end.
    fn from_roots_coeffs(_: &(), roots: &[Self]) -> Vec<Self> {
        let mut layer: Vec<Vec<BigInt>> =
            roots.iter().map(|r| alloc::vec![-r.numer().clone(), r.denom().clone()]).collect();
        if layer.is_empty() {
            return alloc::vec![Rational::one()];
        }
        while layer.len() > 1 {
            let mut next = Vec::with_capacity(layer.len().div_ceil(2));
            let mut it = layer.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(int_mul(&a, &b)),
                    None => next.push(a),
                }
            }
            layer = next;
        }
        let coeffs = layer.pop().unwrap();
        let lead = coeffs.last().unwrap().clone();
        IntegerPoly { coeffs, den: lead }.to_rationals(&BigInt::one())
    }

    /// Clears denominators, multiplies over the integers, and reduces once
    /// per output coefficient.
    fn mul_coeffs(a: &[Self], b: &[Self]) -> Vec<Self> {
        if a.len() < 4 || b.len() < 4 {
            return crate::field::schoolbook(a, b);
        }
        let (ia, da) = integer_scaled(a);
        let (ib, db) = integer_scaled(b);
        IntegerPoly { coeffs: int_mul(&ia, &ib), den: da }.to_rationals(&db)
    }
}

fn compose_small(outer: &[Rational], inner: &[Rational]) -> Vec<Rational> {
    let mut acc: Vec<Rational> = Vec::new();
    for c in outer.iter().rev() {
        acc = Rational::mul_coeffs(&acc, inner);
        if acc.is_empty() {
            acc.push(c.clone());
        } else {
            acc[0] = &acc[0] + c;
        }
    }
    acc
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = alloc::vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                acc[i + j] += x * y;
            }
        }
    }
    acc
}

/// A rational polynomial scaled to integer coefficients over one common
/// denominator, for evaluation without intermediate gcds.
#[derive(Clone, Debug)]
pub struct IntegerPoly {
    coeffs: Vec<BigInt>,
    den: BigInt,
}

impl IntegerPoly {
    pub fn new(coeffs: &[Rational]) -> Self {
        let (coeffs, den) = integer_scaled(coeffs);
        IntegerPoly { coeffs, den }
    }

    /// Unreduced `(num, den)` with `num / den = f(x)`, `den > 0`.
    pub fn eval_fraction(&self, x: &Rational) -> (BigInt, BigInt) {
        let Some((top, rest)) = self.coeffs.split_last() else {
            return (BigInt::zero(), BigInt::one());
        };
        let (p, q) = (x.numer(), x.denom());
        let mut acc = top.clone();
        let mut qpow = BigInt::one();
        for c in rest.iter().rev() {
            qpow *= q;
            acc = acc * p + c * &qpow;
        }
        (acc, &self.den * qpow)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let (n, d) = self.eval_fraction(x);
        Rational(BigRational::new(n, d))
    }

    pub fn eval_eq(&self, x: &Rational, target: &Rational) -> bool {
        let (n, d) = self.eval_fraction(x);
        n * target.denom() == target.numer() * d
    }

    pub fn eval_eq_square(&self, x: &Rational, y: &Rational) -> bool {
        let (n, d) = self.eval_fraction(x);
        n * (y.denom() * y.denom()) == (y.numer() * y.numer()) * d
    }

    fn to_rationals(&self, den: &BigInt) -> Vec<Rational> {
        let full = &self.den * den;
        self.coeffs.iter().map(|c| Rational(BigRational::new(c.clone(), full.clone()))).collect()
    }
}

/// Rescales coefficients by the lcm of their denominators.
fn integer_scaled(a: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for c in a {
        if !c.denom().is_one() {
            l = l.lcm(c.denom());
        }
    }
    let v = a
        .iter()
        .map(|c| {
            if c.denom().is_one() {
                c.numer() * &l
            } else {
                c.numer() * (&l / c.denom())
            }
        })
        .collect();
    (v, l)
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && *self.0.numer() == BigInt::from(*other)
    }
}
