//! Reduction of rational curves and their point classes modulo primes.

use alloc::format;

use crate::curve::{CurvePoint, CurveSpec};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::jacobian::fp::{Fp, Modulus};
use crate::jacobian::mumford::{FpCurve, MumfordDivisor};
use crate::poly::Poly;
use crate::rational::Rational;

/// Which divisor class a point contributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    /// `[P - inf]`.
    Base,
    /// `eps(P) = 2[P - inf]`.
    Eps,
    /// `[P - D]` with `D = (0, 0)`, i.e. `[P - inf] - [D - inf]`.
    R,
}

impl ClassKind {
    pub fn name(self) -> &'static str {
        match self {
            ClassKind::Base => "base",
            ClassKind::Eps => "eps",
            ClassKind::R => "r",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "base" => Some(ClassKind::Base),
            "eps" => Some(ClassKind::Eps),
            "r" => Some(ClassKind::R),
            _ => None,
        }
    }
}

fn bad(p: u64, why: &str) -> Error {
    Error::BadReduction(format!("p = {p}: {why}"))
}

pub fn reduce_curve(curve: &CurveSpec<Rational>, p: u64) -> Result<FpCurve> {
    if !curve.has_odd_degree() {
        return Err(Error::Unsupported(format!(
            "reduction needs odd deg f, got {}",
            curve.degree()
        )));
    }
    if p <= 2 {
        return Err(bad(p, "p must be an odd prime"));
    }
    let m = Modulus::new(p).map_err(|_| bad(p, "not an odd prime below 2^62"))?;
    let f = curve
        .f
        .try_map(&m, |c| Fp::from_rational(&m, c))
        .map_err(|_| bad(p, "p divides a coefficient denominator of f"))?;
    for pt in &curve.points {
        if let CurvePoint::Affine { x, y } = pt {
            if x.mod_u64(p).is_none() || y.mod_u64(p).is_none() {
                return Err(bad(p, "p divides a point coordinate denominator"));
            }
        }
    }
    if f.degree() != curve.f.degree() {
        return Err(bad(p, "p divides the leading coefficient of f"));
    }
    // With the degree preserved, disc(f mod p) = disc(f) mod p.
    if f.discriminant()?.is_zero() {
        return Err(bad(p, "p divides disc(f)"));
    }
    FpCurve::new(f)
}

fn reduce_coord(q: &Rational, m: &Modulus) -> Result<Fp> {
    Fp::from_rational(m, q)
        .map_err(|_| bad(m.p(), "point coordinate is not p-integral"))
}

/// Mumford form of the class a rational point contributes at `curve`'s prime.
pub fn reduce_class(
    point: &CurvePoint<Rational>,
    curve: &FpCurve,
    kind: ClassKind,
) -> Result<MumfordDivisor> {
    let m = *curve.modulus();
    let (a, b) = match point {
        CurvePoint::Infinity(_) => return Ok(curve.identity()),
        CurvePoint::Affine { x, y } => (reduce_coord(x, &m)?, reduce_coord(y, &m)?),
    };
    let base = curve
        .point(a, b)
        .map_err(|_| bad(m.p(), "point does not reduce onto the curve"))?;
    match kind {
        ClassKind::Base => Ok(base),
        ClassKind::Eps => eps_direct(curve, a, b),
        ClassKind::R => {
            if !curve.f().coeff(0).is_zero() {
                return Err(Error::pre("(0, 0) is not on the curve"));
            }
            if a.is_zero() {
                return Err(bad(m.p(), "point reduces onto D = (0, 0)"));
            }
            let d = curve.point(Fp::zero(&m), Fp::zero(&m))?;
            // D is 2-torsion, so subtracting it equals adding it.
            curve.add(&base, &d)
        }
    }
}

/// `2[P - inf]` from the tangent line at `P`, without going through the
/// general composition.
fn eps_direct(curve: &FpCurve, a: Fp, b: Fp) -> Result<MumfordDivisor> {
    if b.is_zero() {
        return Ok(curve.identity());
    }
    let two_b_inv = b.add(&b).inv().expect("p odd and b nonzero");
    let slope = curve.f().derivative().eval(&a).mul(&two_b_inv);
    let lin = Poly::linear_root(&a);
    let u = &lin * &lin;
    let v = &Poly::constant(b) + &lin.scale(&slope);
    if curve.genus() >= 2 {
        return curve.divisor(u, v);
    }
    // Genus one: reduce the degree-2 divisor once.
    let u2 = (curve.f() - &(&v * &v)).div_exact(&u)?.monic();
    let v2 = (-&v).rem(&u2)?;
    curve.divisor(u2, v2)
}
