use alloc::vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::rational::Rational;

/// Element of `Q(zeta_p) = Q[z]/Phi_p(z)`, represented by its residue of
/// degree below `p - 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloElem {
    p: u32,
    rep: Poly<Rational>,
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cyclo{}{:?}", self.p, self.rep)
    }
}

pub fn is_prime_u32(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u32;
    while (i as u64) * (i as u64) <= p as u64 {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// `1 + z + ... + z^(p-1)`.
fn cyclotomic(p: u32) -> Poly<Rational> {
    Poly::from_ints(&(), &vec![1; p as usize])
}

/// Reduces modulo `z^p - 1` and then modulo `Phi_p`.
fn reduce(p: u32, poly: &Poly<Rational>) -> Poly<Rational> {
    let p = p as usize;
    let mut v = vec![Rational::zero(); p];
    for (i, c) in poly.coeffs().iter().enumerate() {
        v[i % p] = &v[i % p] + c;
    }
    let top = v.pop().expect("p >= 2");
    if !top.is_zero() {
        for c in v.iter_mut() {
            *c = &*c - &top;
        }
    }
    Poly::new(&(), v)
}

impl CycloElem {
    pub fn new(p: u32, rep: Poly<Rational>) -> Result<Self> {
        if !is_prime_u32(p) {
            return Err(Error::pre("cyclotomic field needs a prime p"));
        }
        Ok(CycloElem { p, rep: reduce(p, &rep) })
    }

    pub fn rational(p: u32, q: Rational) -> Result<Self> {
        CycloElem::new(p, Poly::constant(q))
    }

    /// `zeta_p^j`.
    pub fn zeta_pow(p: u32, j: u64) -> Result<Self> {
        let k = (j % p as u64) as usize;
        CycloElem::new(p, Poly::monomial(Rational::one(), k))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rep(&self) -> &Poly<Rational> {
        &self.rep
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.rep.is_constant() {
            Some(self.rep.coeff(0))
        } else {
            None
        }
    }
}

impl Field for CycloElem {
    type Ctx = u32;

    fn ctx(&self) -> u32 {
        self.p
    }
    fn zero(p: &u32) -> Self {
        CycloElem { p: *p, rep: Poly::zero(&()) }
    }
    fn one(p: &u32) -> Self {
        CycloElem { p: *p, rep: Poly::one(&()) }
    }
    fn from_i64(p: &u32, n: i64) -> Self {
        CycloElem { p: *p, rep: Poly::constant(n.into()) }
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p, "cyclotomic elements from different fields");
        CycloElem { p: self.p, rep: &self.rep + &rhs.rep }
    }
    fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p, "cyclotomic elements from different fields");
        CycloElem { p: self.p, rep: &self.rep - &rhs.rep }
    }
    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p, "cyclotomic elements from different fields");
        CycloElem { p: self.p, rep: reduce(self.p, &(&self.rep * &rhs.rep)) }
    }
    fn neg(&self) -> Self {
        CycloElem { p: self.p, rep: -&self.rep }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = self.rep.xgcd(&cyclotomic(self.p)).ok()?;
        // Phi_p is irreducible, so any nonzero residue is coprime to it.
        debug_assert_eq!(g.degree(), Some(0));
        Some(CycloElem { p: self.p, rep: reduce(self.p, &s) })
    }
}
