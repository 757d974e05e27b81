//! Dense univariate polynomials over an exact field.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;

/// Coefficients are stored lowest degree first with no trailing zeros, so
/// the zero polynomial has an empty coefficient list and degree `None`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
    ctx: F::Ctx,
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<F: Field> Poly<F> {
    pub fn new(ctx: &F::Ctx, mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.ctx() == *ctx));
        Poly { coeffs, ctx: ctx.clone() }
    }

    /// Builds from coefficients, rejecting an empty list whose field is
    /// unknown.
    pub fn from_coeffs(coeffs: Vec<F>) -> Result<Self> {
        let ctx = coeffs.first().ok_or_else(|| Error::pre("empty coefficient list"))?.ctx();
        if coeffs.iter().any(|c| c.ctx() != ctx) {
            return Err(Error::FieldMismatch);
        }
        Ok(Poly::new(&ctx, coeffs))
    }

    pub fn zero(ctx: &F::Ctx) -> Self {
        Poly { coeffs: Vec::new(), ctx: ctx.clone() }
    }

    pub fn one(ctx: &F::Ctx) -> Self {
        Poly::constant(F::one(ctx))
    }

    pub fn constant(c: F) -> Self {
        let ctx = c.ctx();
        Poly::new(&ctx, vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let ctx = c.ctx();
        let mut v = vec![F::zero(&ctx); k];
        v.push(c);
        Poly::new(&ctx, v)
    }

    pub fn x(ctx: &F::Ctx) -> Self {
        Poly::monomial(F::one(ctx), 1)
    }

    /// `x - a`.
    pub fn linear_root(a: &F) -> Self {
        let ctx = a.ctx();
        Poly::new(&ctx, vec![a.neg(), F::one(&ctx)])
    }

    pub fn from_ints(ctx: &F::Ctx, coeffs: &[i64]) -> Self {
        Poly::new(ctx, coeffs.iter().map(|&c| F::from_i64(ctx, c)).collect())
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly::new(&self.ctx, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_ctx(rhs)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Ok(Poly::new(&self.ctx, (0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect()))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_ctx(rhs)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Ok(Poly::new(&self.ctx, (0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect()))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_ctx(rhs)?;
        Ok(Poly::new(&self.ctx, F::mul_coeffs(&self.coeffs, &rhs.coeffs)))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &F) -> F {
        F::eval_coeffs(&self.coeffs, x)
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&F::from_i64(&self.ctx, i as i64)))
            .collect();
        Poly::new(&self.ctx, v)
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_ctx(inner)?;
        Ok(Poly::new(&self.ctx, F::compose_coeffs(&self.coeffs, &inner.coeffs)))
    }

    /// `self(x^k)` without a general composition.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k > 0);
        let mut v = vec![F::zero(&self.ctx); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        Poly::new(&self.ctx, v)
    }

    /// Division with remainder; the divisor's leading coefficient must be
    /// invertible (always true over a field once it is nonzero).
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        self.check_ctx(d)?;
        let dd = d.degree().ok_or(Error::NotInvertible)?;
        let lc_inv = d.coeffs[dd].inv().ok_or(Error::NotInvertible)?;
        let mut r = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return Ok((Poly::zero(&self.ctx), Poly::zero(&self.ctx)));
        };
        if n < dd {
            return Ok((Poly::zero(&self.ctx), self.clone()));
        }
        let mut q = vec![F::zero(&self.ctx); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = r[k + dd].mul(&lc_inv);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].sub(&c.mul(dc));
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(&self.ctx, q), Poly::new(&self.ctx, r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; fails if the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::pre("division is not exact"))
        }
    }

    /// Scales to leading coefficient one. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero field element")),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.rem(&b)?.monic();
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other` and `g` monic
    /// (or zero when both inputs are zero).
    pub fn xgcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        self.check_ctx(other)?;
        let ctx = &self.ctx;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(ctx), Poly::zero(ctx));
        let (mut t0, mut t1) = (Poly::zero(ctx), Poly::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
            t0 = core::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => Ok((r0, s0, t0)),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero field element");
                Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
            }
        }
    }

    /// `prod (x - r)` over the given roots, built with a product tree.
    pub fn from_roots(ctx: &F::Ctx, roots: &[F]) -> Self {
        Poly::new(ctx, F::from_roots_coeffs(ctx, roots))
    }

    /// Splits a monic polynomial `m` of degree `2d` as `m = h^2 - l` with `h`
    /// monic of degree `d` and `deg l <= d - 1`. Requires `2` invertible.
    pub fn sqrt_approx(&self) -> Result<(Self, Self)> {
        let n = self.degree().ok_or_else(|| Error::pre("sqrt_approx of the zero polynomial"))?;
        if !self.is_monic() || n % 2 == 1 {
            return Err(Error::pre("sqrt_approx needs a monic polynomial of even degree"));
        }
        let d = n / 2;
        let ctx = &self.ctx;
        let half = F::from_i64(ctx, 2)
            .inv()
            .ok_or_else(|| Error::pre("sqrt_approx needs 2 to be invertible"))?;
        let mut h = vec![F::zero(ctx); d + 1];
        h[d] = F::one(ctx);
        // Coefficient of x^(2d-k) in h^2 is 2*h[d-k] plus products of
        // already-known higher coefficients.
        for k in 1..=d {
            let target = 2 * d - k;
            let mut known = F::zero(ctx);
            for i in (d - k + 1)..=d {
                let j = target - i;
                if j > d - k && j <= d {
                    known = known.add(&h[i].mul(&h[j]));
                }
            }
            h[d - k] = self.coeffs[target].sub(&known).mul(&half);
        }
        let h = Poly::new(ctx, h);
        let l = &(&h * &h) - self;
        debug_assert!(l.degree().is_none_or(|dl| dl < d.max(1)));
        Ok((h, l))
    }

    /// Resultant `lc(a)^deg(b) * prod_{a(r)=0} b(r)` for nonzero inputs.
    pub fn resultant(&self, other: &Self) -> Result<F> {
        self.check_ctx(other)?;
        let ctx = self.ctx.clone();
        let (Some(_), Some(_)) = (self.degree(), other.degree()) else {
            return Ok(F::zero(&ctx));
        };
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut acc = F::one(&ctx);
        loop {
            let m = a.degree().unwrap();
            let n = b.degree().unwrap();
            if n == 0 {
                return Ok(acc.mul(&b.coeffs[0].pow(m as u64)));
            }
            if m == 0 {
                return Ok(acc.mul(&a.coeffs[0].pow(n as u64)));
            }
            if m < n {
                if (m * n) % 2 == 1 {
                    acc = acc.neg();
                }
                core::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = a.rem(&b)?;
            let Some(k) = r.degree() else {
                return Ok(F::zero(&ctx));
            };
            let lc_b = b.coeffs[n].clone();
            acc = acc.mul(&lc_b.pow((m - k) as u64));
            if (m * n) % 2 == 1 {
                acc = acc.neg();
            }
            a = b;
            b = r;
        }
    }

    /// `(-1)^(n(n-1)/2) lc^(2n-2) prod_{i<j} (r_i - r_j)^2`, computed from
    /// the resultant with the derivative. Degree-1 polynomials have
    /// discriminant one.
    pub fn discriminant(&self) -> Result<F> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::pre("discriminant needs degree at least 1")),
            Some(n) => n,
        };
        let ctx = self.ctx.clone();
        if n == 1 {
            return Ok(F::one(&ctx));
        }
        let fp = self.derivative();
        let Some(k) = fp.degree() else {
            return Ok(F::zero(&ctx));
        };
        let lc = self.leading().unwrap().clone();
        let lc_inv = lc.inv().expect("nonzero field element");
        // resultant() uses the actual degree k of f'; the product of f' over
        // the roots is res / lc^k.
        let prod = self.resultant(&fp)?.mul(&lc_inv.pow(k as u64));
        let mut disc = prod.mul(&lc.pow((n - 2) as u64));
        if (n * (n - 1) / 2) % 2 == 1 {
            disc = disc.neg();
        }
        Ok(disc)
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).map(|g| g.is_constant()).unwrap_or(false),
        }
    }

    /// Applies `f` to every coefficient, landing in another field.
    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(ctx, self.coeffs.iter().map(f).collect())
    }

    /// Fallible variant of [`Poly::map`].
    pub fn try_map<G: Field>(
        &self,
        ctx: &G::Ctx,
        f: impl Fn(&F) -> Result<G>,
    ) -> Result<Poly<G>> {
        let v = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(ctx, v))
    }
}

macro_rules! poly_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<F: Field> $tr<&Poly<F>> for &Poly<F> {
            type Output = Poly<F>;
            /// Panics if the operands live in different fields.
            fn $m(self, rhs: &Poly<F>) -> Poly<F> {
                self.$try(rhs).expect("polynomials over different fields")
            }
        }
        impl<F: Field> $tr<Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                self.$try(&rhs).expect("polynomials over different fields")
            }
        }
    };
}
poly_op!(Add, add, try_add);
poly_op!(Sub, sub, try_sub);
poly_op!(Mul, mul, try_mul);

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::new(&self.ctx, self.coeffs.iter().map(|c| c.neg()).collect())
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}
