//! Mumford representation and Cantor's algorithm.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::jacobian::fp::{Fp, Modulus};
use crate::poly::Poly;

/// `y^2 = f(x)` over `F_p` with `deg f = 2g + 1` and `f` squarefree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpCurve {
    f: Poly<Fp>,
    genus: usize,
    tag: u64,
}

/// Reduced divisor class `(u, v)`: `u` monic, `deg v < deg u <= g`,
/// `u | v^2 - f`. The identity is `(1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumfordDivisor {
    u: Poly<Fp>,
    v: Poly<Fp>,
    tag: u64,
}

impl MumfordDivisor {
    pub fn u(&self) -> &Poly<Fp> {
        &self.u
    }

    pub fn v(&self) -> &Poly<Fp> {
        &self.v
    }

    pub fn is_identity(&self) -> bool {
        self.u.degree() == Some(0)
    }

    /// Canonical integer encoding, usable as a map key.
    pub fn key(&self) -> Vec<u64> {
        let mut k = Vec::with_capacity(self.u.coeffs().len() + self.v.coeffs().len() + 1);
        k.extend(self.u.coeffs().iter().map(|c| c.value()));
        k.push(u64::MAX);
        k.extend(self.v.coeffs().iter().map(|c| c.value()));
        k
    }
}

fn fingerprint(f: &Poly<Fp>) -> u64 {
    // FNV-1a over the modulus and coefficients.
    let mut h: u64 = 0xcbf29ce484222325;
    let mut mix = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    mix(f.ctx().p());
    for c in f.coeffs() {
        mix(c.value());
    }
    h
}

impl FpCurve {
    pub fn new(f: Poly<Fp>) -> Result<Self> {
        let deg = f.degree().ok_or_else(|| Error::pre("zero polynomial"))?;
        if deg % 2 == 0 || deg < 3 {
            return Err(Error::Unsupported(alloc::format!(
                "Cantor arithmetic needs odd deg f >= 3, got {deg}"
            )));
        }
        if !f.is_squarefree() {
            return Err(Error::BadReduction(alloc::string::String::from("f is not squarefree")));
        }
        let tag = fingerprint(&f);
        Ok(FpCurve { genus: (deg - 1) / 2, f, tag })
    }

    pub fn f(&self) -> &Poly<Fp> {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn modulus(&self) -> &Modulus {
        self.f.ctx()
    }

    pub fn p(&self) -> u64 {
        self.modulus().p()
    }

    pub fn fp(&self, v: u64) -> Fp {
        Fp::new(self.modulus(), v)
    }

    pub fn identity(&self) -> MumfordDivisor {
        let m = self.modulus();
        MumfordDivisor { u: Poly::one(m), v: Poly::zero(m), tag: self.tag }
    }

    /// Validates and wraps `(u, v)`.
    pub fn divisor(&self, u: Poly<Fp>, v: Poly<Fp>) -> Result<MumfordDivisor> {
        if u.ctx() != self.modulus() || v.ctx() != self.modulus() {
            return Err(Error::FieldMismatch);
        }
        let du = u.degree().ok_or_else(|| Error::pre("u = 0"))?;
        if !u.is_monic() || du > self.genus {
            return Err(Error::pre("u must be monic of degree at most g"));
        }
        if v.degree().is_some_and(|dv| dv >= du) {
            return Err(Error::pre("deg v must be below deg u"));
        }
        if !(&(&v * &v) - &self.f).rem(&u)?.is_zero() {
            return Err(Error::pre("u does not divide v^2 - f"));
        }
        Ok(MumfordDivisor { u, v, tag: self.tag })
    }

    /// `[P - inf]` for an affine point `P = (a, b)`.
    pub fn point(&self, a: Fp, b: Fp) -> Result<MumfordDivisor> {
        let u = Poly::linear_root(&a);
        let v = Poly::constant(b);
        self.divisor(u, v)
    }

    pub fn contains(&self, d: &MumfordDivisor) -> bool {
        d.tag == self.tag
    }

    fn check(&self, d: &MumfordDivisor) -> Result<()> {
        if self.contains(d) {
            Ok(())
        } else {
            Err(Error::CurveMismatch)
        }
    }

    pub fn neg(&self, d: &MumfordDivisor) -> Result<MumfordDivisor> {
        self.check(d)?;
        Ok(MumfordDivisor { u: d.u.clone(), v: -&d.v, tag: self.tag })
    }

    /// Cantor composition followed by reduction.
    pub fn add(&self, d1: &MumfordDivisor, d2: &MumfordDivisor) -> Result<MumfordDivisor> {
        self.check(d1)?;
        self.check(d2)?;
        if d1.is_identity() {
            return Ok(d2.clone());
        }
        if d2.is_identity() {
            return Ok(d1.clone());
        }
        let (u1, v1, u2, v2) = (&d1.u, &d1.v, &d2.u, &d2.v);
        let (d0, e1, e2) = u1.xgcd(u2)?;
        let vsum = v1 + v2;
        let (d, c1, c2) = d0.xgcd(&vsum)?;
        let s1 = &c1 * &e1;
        let s2 = &c1 * &e2;
        let s3 = c2;
        let u = (u1 * u2).div_exact(&(&d * &d))?;
        let num = &(&(&(&s1 * u1) * v2) + &(&(&s2 * u2) * v1)) + &(&s3 * &(&(v1 * v2) + &self.f));
        let v = num.div_exact(&d)?.rem(&u)?;
        Ok(self.reduce(u, v))
    }

    fn reduce(&self, mut u: Poly<Fp>, mut v: Poly<Fp>) -> MumfordDivisor {
        while u.degree().unwrap_or(0) > self.genus {
            let u_next = (&self.f - &(&v * &v)).div_exact(&u).expect("u divides f - v^2");
            v = (-&v).rem(&u_next).expect("nonzero modulus");
            u = u_next;
        }
        let u = u.monic();
        let v = v.rem(&u).expect("nonzero modulus");
        MumfordDivisor { u, v, tag: self.tag }
    }

    pub fn double(&self, d: &MumfordDivisor) -> Result<MumfordDivisor> {
        self.add(d, d)
    }

    pub fn scalar_mul(&self, n: i64, d: &MumfordDivisor) -> Result<MumfordDivisor> {
        self.check(d)?;
        let base = if n < 0 { self.neg(d)? } else { d.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.identity();
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &pow)?;
            }
            k >>= 1;
            if k > 0 {
                pow = self.double(&pow)?;
            }
        }
        Ok(acc)
    }

    /// `sum coeffs[i] * divisors[i]`.
    pub fn combination(&self, coeffs: &[i64], divisors: &[MumfordDivisor]) -> Result<MumfordDivisor> {
        let mut acc = self.identity();
        for (&c, d) in coeffs.iter().zip(divisors) {
            if c != 0 {
                acc = self.add(&acc, &self.scalar_mul(c, d)?)?;
            }
        }
        Ok(acc)
    }
}
