use alloc::vec::Vec;
use core::fmt::Debug;

use crate::algebra::{CycloElem, QuadAlg, QuadElem};
use crate::poly::Poly;
use crate::rational::{IntegerPoly, Rational};

/// A commutative field whose elements carry enough context to build
/// constants (`0`, `1`, integers) in the same field as an existing element.
///
/// Binary operations on elements of incompatible contexts panic; fallible
/// entry points such as [`crate::Poly::compose`] check contexts first.
pub trait Field: Clone + PartialEq + Eq + Debug {
    type Ctx: Clone + PartialEq + Eq + Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Horner evaluation of a coefficient slice (lowest degree first).
    fn eval_coeffs(coeffs: &[Self], x: &Self) -> Self {
        let mut acc = Self::zero(&x.ctx());
        for c in coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Coefficients of `outer(inner(x))`.
    fn compose_coeffs(outer: &[Self], inner: &[Self]) -> Vec<Self> {
        let mut acc: Vec<Self> = Vec::new();
        for c in outer.iter().rev() {
            acc = Self::mul_coeffs(&acc, inner);
            if acc.is_empty() {
                acc.push(c.clone());
            } else {
                acc[0] = acc[0].add(c);
            }
        }
        acc
    }

    /// Coefficients of `prod (x - r)`.
    fn from_roots_coeffs(ctx: &Self::Ctx, roots: &[Self]) -> Vec<Self> {
        let mut layer: Vec<Vec<Self>> =
            roots.iter().map(|r| alloc::vec![r.neg(), Self::one(ctx)]).collect();
        if layer.is_empty() {
            return alloc::vec![Self::one(ctx)];
        }
        while layer.len() > 1 {
            let mut next = Vec::with_capacity(layer.len().div_ceil(2));
            let mut it = layer.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(Self::mul_coeffs(&a, &b)),
                    None => next.push(a),
                }
            }
            layer = next;
        }
        layer.pop().unwrap()
    }

    /// Dense product of two coefficient slices (lowest degree first).
    /// Fields with cheap common-denominator tricks may override this.
    fn mul_coeffs(a: &[Self], b: &[Self]) -> Vec<Self> {
        schoolbook(a, b)
    }
}

pub(crate) fn schoolbook<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let ctx = a[0].ctx();
    let mut out = alloc::vec![F::zero(&ctx); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Fields containing `Q`, so rational polynomials can be lifted into them.
pub trait RationalAlgebra: Field {
    /// A rational polynomial preprocessed for repeated evaluation.
    type Prepared;

    fn embed(ctx: &Self::Ctx, q: &Rational) -> Self;

    fn prepare(ctx: &Self::Ctx, p: &Poly<Rational>) -> Self::Prepared;

    /// Whether the prepared polynomial takes the value `target` at `x`.
    fn eval_eq(p: &Self::Prepared, x: &Self, target: &Self) -> bool;

    /// Whether the prepared polynomial takes the value `y^2` at `x`.
    fn eval_eq_square(p: &Self::Prepared, x: &Self, y: &Self) -> bool {
        Self::eval_eq(p, x, &y.square())
    }
}

impl RationalAlgebra for Rational {
    type Prepared = IntegerPoly;

    fn embed(_: &(), q: &Rational) -> Self {
        q.clone()
    }
    fn prepare(_: &(), p: &Poly<Rational>) -> IntegerPoly {
        IntegerPoly::new(p.coeffs())
    }
    fn eval_eq(p: &IntegerPoly, x: &Self, target: &Self) -> bool {
        p.eval_eq(x, target)
    }
    fn eval_eq_square(p: &IntegerPoly, x: &Self, y: &Self) -> bool {
        p.eval_eq_square(x, y)
    }
}

fn lift<F: RationalAlgebra>(ctx: &F::Ctx, p: &Poly<Rational>) -> Poly<F> {
    p.map(ctx, |c| F::embed(ctx, c))
}

impl RationalAlgebra for CycloElem {
    type Prepared = Poly<CycloElem>;

    fn embed(p: &u32, q: &Rational) -> Self {
        CycloElem::rational(*p, q.clone()).expect("context holds a prime")
    }
    fn prepare(p: &u32, poly: &Poly<Rational>) -> Poly<CycloElem> {
        lift(p, poly)
    }
    fn eval_eq(p: &Poly<CycloElem>, x: &Self, target: &Self) -> bool {
        p.eval(x) == *target
    }
}

impl RationalAlgebra for QuadElem {
    type Prepared = Poly<QuadElem>;

    fn embed(alg: &QuadAlg, q: &Rational) -> Self {
        QuadElem::new(q.clone(), Rational::zero(), *alg)
    }
    fn prepare(alg: &QuadAlg, poly: &Poly<Rational>) -> Poly<QuadElem> {
        lift(alg, poly)
    }
    fn eval_eq(p: &Poly<QuadElem>, x: &Self, target: &Self) -> bool {
        p.eval(x) == *target
    }
}
