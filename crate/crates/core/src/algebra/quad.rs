use core::fmt;

use crate::field::Field;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadAlg {
    /// `Q(i)`; the pair `(a, b)` stands for `a + b*i`.
    Gaussian,
    /// `Q(w)` with `w^2 + w + 1 = 0`; the pair `(a, b)` stands for `a - b*w`.
    Eisenstein,
}

impl QuadAlg {
    pub fn name(self) -> &'static str {
        match self {
            QuadAlg::Gaussian => "gaussian",
            QuadAlg::Eisenstein => "eisenstein",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "gaussian" => Some(QuadAlg::Gaussian),
            "eisenstein" => Some(QuadAlg::Eisenstein),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub a: Rational,
    pub b: Rational,
    pub alg: QuadAlg,
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.alg.name(), self.a, self.b)
    }
}

impl QuadElem {
    pub fn new(a: Rational, b: Rational, alg: QuadAlg) -> Self {
        QuadElem { a, b, alg }
    }

    pub fn from_ints(a: i64, b: i64, alg: QuadAlg) -> Self {
        QuadElem::new(a.into(), b.into(), alg)
    }

    /// `a^2 + b^2` (Gaussian) or `a^2 + ab + b^2` (Eisenstein).
    pub fn norm(&self) -> Rational {
        let sq = &self.a * &self.a + &self.b * &self.b;
        match self.alg {
            QuadAlg::Gaussian => sq,
            QuadAlg::Eisenstein => sq + &self.a * &self.b,
        }
    }

    pub fn conj(&self) -> Self {
        match self.alg {
            QuadAlg::Gaussian => QuadElem::new(self.a.clone(), -&self.b, self.alg),
            // conj(a - b w) = a - b w^2 = (a + b) + b w
            QuadAlg::Eisenstein => QuadElem::new(&self.a + &self.b, -&self.b, self.alg),
        }
    }
}

impl Field for QuadElem {
    type Ctx = QuadAlg;

    fn ctx(&self) -> QuadAlg {
        self.alg
    }
    fn zero(alg: &QuadAlg) -> Self {
        QuadElem::from_ints(0, 0, *alg)
    }
    fn one(alg: &QuadAlg) -> Self {
        QuadElem::from_ints(1, 0, *alg)
    }
    fn from_i64(alg: &QuadAlg, n: i64) -> Self {
        QuadElem::from_ints(n, 0, *alg)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.alg, rhs.alg, "quadratic elements from different algebras");
        QuadElem::new(&self.a + &rhs.a, &self.b + &rhs.b, self.alg)
    }
    fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.alg, rhs.alg, "quadratic elements from different algebras");
        QuadElem::new(&self.a - &rhs.a, &self.b - &rhs.b, self.alg)
    }
    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.alg, rhs.alg, "quadratic elements from different algebras");
        let (a, b, c, d) = (&self.a, &self.b, &rhs.a, &rhs.b);
        let ac = a * c;
        let bd = b * d;
        match self.alg {
            QuadAlg::Gaussian => QuadElem::new(ac - bd, a * d + b * c, self.alg),
            // (a - b w)(c - d w) = (ac - bd) - (ad + bc + bd) w
            QuadAlg::Eisenstein => QuadElem::new(&ac - &bd, a * d + b * c + bd, self.alg),
        }
    }
    fn neg(&self) -> Self {
        QuadElem::new(-&self.a, -&self.b, self.alg)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm().recip()?;
        let c = self.conj();
        Some(QuadElem::new(&c.a * &n, &c.b * &n, self.alg))
    }
}

/// Rational parametrization of the norm-one conic of the algebra.
pub fn norm_one_param(t: &Rational, alg: QuadAlg) -> QuadElem {
    let one = Rational::one();
    let t2 = t * t;
    match alg {
        QuadAlg::Gaussian => {
            let den = (&one + &t2).recip().expect("1 + t^2 is nonzero over Q");
            QuadElem::new((&one - &t2) * &den, (t + t) * &den, alg)
        }
        QuadAlg::Eisenstein => {
            let den = (&one + t + &t2).recip().expect("1 + t + t^2 is nonzero over Q");
            let two_plus_t = Rational::from(2) + t;
            QuadElem::new((&one - &t2) * &den, t * &two_plus_t * &den, alg)
        }
    }
}
