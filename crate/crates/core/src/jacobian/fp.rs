//! Prime-field arithmetic with Montgomery multiplication.

use core::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::rational::Rational;

pub const MAX_MODULUS_BITS: u32 = 62;

/// An odd prime `p < 2^62` with its Montgomery constants (`R = 2^64`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    p: u64,
    /// `-p^-1 mod 2^64`.
    neg_inv: u64,
    /// `R^2 mod p`.
    r2: u64,
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for b in BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

impl Modulus {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || p >> MAX_MODULUS_BITS != 0 {
            return Err(Error::pre("modulus must be an odd prime below 2^62"));
        }
        if !is_prime_u64(p) {
            return Err(Error::pre("modulus is not prime"));
        }
        // Newton iteration for p^-1 mod 2^64.
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        Ok(Modulus { p, neg_inv: inv.wrapping_neg(), r2: mul_mod(r, r, p) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        // t + m*p < 2^124 + 2^126 fits in u128 because p < 2^62.
        let s = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn to_mont(&self, a: u64) -> u64 {
        self.redc(a as u128 * self.r2 as u128)
    }
}

/// Element of `F_p`, stored in Montgomery form.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    mont: u64,
    m: Modulus,
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Fp {
    pub fn new(m: &Modulus, value: u64) -> Self {
        Fp { mont: m.to_mont(value % m.p), m: *m }
    }

    pub fn from_rational(m: &Modulus, q: &Rational) -> Result<Self> {
        let v = q
            .mod_u64(m.p)
            .ok_or_else(|| Error::BadReduction(alloc::format!("{} divides a denominator", m.p)))?;
        Ok(Fp::new(m, v))
    }

    /// Canonical residue in `[0, p)`.
    pub fn value(&self) -> u64 {
        self.m.redc(self.mont as u128)
    }

    pub fn modulus(&self) -> &Modulus {
        &self.m
    }
}

impl Field for Fp {
    type Ctx = Modulus;

    fn ctx(&self) -> Modulus {
        self.m
    }
    fn zero(m: &Modulus) -> Self {
        Fp { mont: 0, m: *m }
    }
    fn one(m: &Modulus) -> Self {
        Fp::new(m, 1)
    }
    fn from_i64(m: &Modulus, n: i64) -> Self {
        let r = n.rem_euclid(m.p as i64) as u64;
        Fp::new(m, r)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.mont == 0
    }
    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.m, rhs.m);
        let s = self.mont + rhs.mont;
        let s = if s >= self.m.p { s - self.m.p } else { s };
        Fp { mont: s, m: self.m }
    }
    #[inline]
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.m, rhs.m);
        let s = if self.mont >= rhs.mont {
            self.mont - rhs.mont
        } else {
            self.mont + self.m.p - rhs.mont
        };
        Fp { mont: s, m: self.m }
    }
    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.m, rhs.m);
        Fp { mont: self.m.redc(self.mont as u128 * rhs.mont as u128), m: self.m }
    }
    fn neg(&self) -> Self {
        if self.mont == 0 {
            *self
        } else {
            Fp { mont: self.m.p - self.mont, m: self.m }
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let v = crate::rational::inv_mod(self.value(), self.m.p)?;
        Some(Fp::new(&self.m, v))
    }
    fn is_one(&self) -> bool {
        self.value() == 1
    }
}
