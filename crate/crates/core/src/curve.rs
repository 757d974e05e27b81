//! Hyperelliptic curves `y^2 = f(x)` built from composite tuples, with
//! their explicit point inventories and exact checks.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::composite::{g_hat, g_quadratic, Aux, CompositeWitness, WitnessKind};
use crate::error::{Degeneracy, Error, Result};
use crate::field::{Field, RationalAlgebra};
use crate::poly::Poly;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Gamma1,
    Gamma2,
    GammaTilde,
    Theta1,
    Theta2,
    ThetaTilde,
    Lambda1,
    Lambda2,
    LambdaTilde,
    Kummer,
    Baseline,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Gamma1,
        Family::Gamma2,
        Family::GammaTilde,
        Family::Theta1,
        Family::Theta2,
        Family::ThetaTilde,
        Family::Lambda1,
        Family::Lambda2,
        Family::LambdaTilde,
        Family::Kummer,
        Family::Baseline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gamma1 => "gamma1",
            Family::Gamma2 => "gamma2",
            Family::GammaTilde => "gamma-tilde",
            Family::Theta1 => "theta1",
            Family::Theta2 => "theta2",
            Family::ThetaTilde => "theta-tilde",
            Family::Lambda1 => "lambda1",
            Family::Lambda2 => "lambda2",
            Family::LambdaTilde => "lambda-tilde",
            Family::Kummer => "kummer",
            Family::Baseline => "baseline",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    pub fn witness_kind(self) -> WitnessKind {
        use Family::*;
        match self {
            Gamma1 | Gamma2 | GammaTilde | Theta1 | Theta2 | ThetaTilde => WitnessKind::B,
            Lambda1 | Lambda2 | LambdaTilde => WitnessKind::Z,
            Kummer => WitnessKind::Kummer,
            Baseline => WitnessKind::Baseline,
        }
    }

    /// Families of the form `y^2 = x * l(inner(x))`.
    pub fn is_twisted(self) -> bool {
        matches!(self, Family::Gamma2 | Family::Theta2 | Family::Lambda2)
    }

    /// Smallest `d` with positive genus (for kummer, the smallest prime).
    pub fn min_d(self) -> usize {
        use Family::*;
        match self {
            Gamma1 | Baseline => 4,
            Gamma2 | GammaTilde | Lambda1 | Kummer => 3,
            Theta1 | Theta2 | ThetaTilde | Lambda2 | LambdaTilde => 2,
        }
    }
}

/// Lower bounds attached to a family: genus, number of rational points,
/// and the published rank bound (carried as metadata only).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub genus: usize,
    pub points: usize,
    pub rank: usize,
}

pub const RANK_NOTE: &str = "published lower bound, not machine-certified";

pub fn expected_counts(family: Family, d: usize) -> Result<Expected> {
    use Family::*;
    if d < family.min_d() {
        return Err(Error::Unsupported(format!("{} needs d >= {}", family.name(), family.min_d())));
    }
    let e = |genus, points, rank| Ok(Expected { genus, points, rank });
    let even = d.is_multiple_of(2);
    match family {
        Gamma1 => {
            let g0 = (d - 2) / 2;
            if even {
                e(g0, 8 * g0 + 9, 4 * g0 + 3)
            } else {
                e(g0, 8 * g0 + 12, 4 * g0 + 5)
            }
        }
        Gamma2 => match d {
            3 => e(1, 14, 6),
            _ if even => {
                let g = (d - 2) / 2;
                e(g, 8 * g + 9, 4 * g + 4)
            }
            _ => {
                let g = (d - 3) / 2 + 1;
                e(g, 8 * g + 6, 4 * g + 2)
            }
        },
        GammaTilde => match d {
            3 => e(1, 24, 6),
            _ => e(d - 2, 8 * d, 4 * d - 1),
        },
        Theta1 => match d {
            2 => e(1, 25, 8),
            3 => e(2, 36, 12),
            _ if even => {
                let g = 3 * ((d - 2) / 2) + 1;
                e(g, 8 * g + 17, 4 * g + 7)
            }
            _ => {
                let g = 3 * ((d - 3) / 2) + 2;
                e(g, 8 * g + 20, 4 * g + 9)
            }
        },
        Theta2 => match d {
            2 => e(1, 25, 8),
            3 => e(3, 38, 18),
            _ if even => {
                let g = 3 * ((d - 2) / 2) + 1;
                e(g, 8 * g + 17, 4 * g + 8)
            }
            _ => {
                let g = 3 * ((d - 3) / 2) + 3;
                e(g, 8 * g + 14, 4 * g + 6)
            }
        },
        ThetaTilde => match d {
            2 => e(2, 48, 16),
            3 => e(5, 72, 30),
            _ => {
                let g = if even { 6 * ((d - 2) / 2) + 2 } else { 6 * ((d - 3) / 2) + 5 };
                e(g, 8 * g + 32, 4 * g + 15)
            }
        },
        Lambda1 => e(d - 2, 8 * d, if d == 3 { 6 } else { 4 * d - 1 }),
        Lambda2 => e(d - 1, 8 * d + 2, 4 * d),
        LambdaTilde => {
            let rank = match d {
                2 => 8,
                3 => 18,
                _ => 8 * d - 1,
            };
            e(2 * d - 3, 16 * d, rank)
        }
        Kummer => {
            if !crate::algebra::is_prime_u32(d as u32) {
                return Err(Error::Unsupported(format!("kummer needs a prime p, got {d}")));
            }
            e(d - 1, 12 * d, 6 * (d - 1))
        }
        Baseline => e((d - 2) / 2, 4 * d + usize::from(even), 2 * d - 1),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvePoint<F> {
    Affine { x: F, y: F },
    Infinity(Branch),
}

impl<F> CurvePoint<F> {
    pub fn affine(&self) -> Option<(&F, &F)> {
        match self {
            CurvePoint::Affine { x, y } => Some((x, y)),
            CurvePoint::Infinity(_) => None,
        }
    }
}

/// A curve `y^2 = f(x)` with its point inventory.
///
/// Points are ordered: the `primary` table points (positive branch) first,
/// then their conjugates in the same order, then `(0, 0)` for the twisted
/// families, then the point at infinity when `deg f` is odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec<F: Field> {
    pub family: Family,
    pub d: usize,
    pub f: Poly<Rational>,
    pub genus: usize,
    pub points: Vec<CurvePoint<F>>,
    pub primary: usize,
    /// Square-root part `h` of the witness's outer polynomial.
    pub h: Poly<Rational>,
    /// Square-root remainder `l`.
    pub ell: Poly<Rational>,
    /// Polynomial substituted into `l` to form `f`.
    pub inner: Poly<Rational>,
    pub witness: CompositeWitness<F>,
    pub expected: Option<Expected>,
}

impl<F: Field> CurveSpec<F> {
    pub fn primary_points(&self) -> &[CurvePoint<F>] {
        &self.points[..self.primary]
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap_or(0)
    }

    pub fn has_odd_degree(&self) -> bool {
        self.degree() % 2 == 1
    }
}

pub fn genus_of_degree(deg: usize) -> usize {
    deg.saturating_sub(1) / 2
}

/// Homogeneous data the builders read from the witness.
struct Layout<F> {
    inner: Poly<Rational>,
    /// `(x, twist, u)` per table point: `x` coordinate, the factor `s` with
    /// `s^2 = x` for twisted families, and the outer root `u` such that
    /// `y = s * h(u)`.
    entries: Vec<(F, Option<Rational>, Rational)>,
}

fn layout<F: RationalAlgebra>(family: Family, w: &CompositeWitness<F>) -> Result<Layout<F>> {
    use Family::*;
    let emb = |q: &Rational| -> Result<F> {
        let ctx = w.roots.first().ok_or_else(|| Error::pre("witness without roots"))?.ctx();
        Ok(F::embed(&ctx, q))
    };
    let mut entries = Vec::new();
    let inner = match (&w.aux, family) {
        (Aux::B { u, .. }, Gamma1) | (Aux::Baseline { u }, Baseline) => {
            for ui in u {
                entries.push((emb(ui)?, None, ui.clone()));
            }
            Poly::x(&())
        }
        (Aux::B { u, t, .. }, Gamma2) => {
            for (ui, ti) in u.iter().zip(t) {
                entries.push((emb(ui)?, Some(ti.clone()), ui.clone()));
            }
            Poly::x(&())
        }
        (Aux::B { u, t, .. }, GammaTilde) => {
            for (ui, ti) in u.iter().zip(t) {
                entries.push((emb(ti)?, None, ui.clone()));
                entries.push((emb(&-ti)?, None, ui.clone()));
            }
            Poly::monomial(Rational::one(), 2)
        }
        (Aux::B { b, rows, u, .. }, Theta1 | Theta2) => {
            for (row, ui) in rows.iter().zip(u) {
                for tij in row {
                    let twist = (family == Theta2).then(|| tij.clone());
                    entries.push((emb(&(tij * tij))?, twist, ui.clone()));
                }
            }
            g_hat(b)
        }
        (Aux::B { b, rows, u, .. }, ThetaTilde) => {
            for (row, ui) in rows.iter().zip(u) {
                for tij in row {
                    entries.push((emb(tij)?, None, ui.clone()));
                    entries.push((emb(&-tij)?, None, ui.clone()));
                }
            }
            g_hat(b).inflate(2)
        }
        (Aux::Z { b, z, t, u }, Lambda1 | Lambda2) => {
            for ((zr, tr), ui) in z.iter().zip(t).zip(u) {
                for (zij, tij) in zr.iter().zip(tr) {
                    let twist = (family == Lambda2).then(|| zij.clone());
                    entries.push((emb(tij)?, twist, ui.clone()));
                }
            }
            g_quadratic(b)
        }
        (Aux::Z { b, z, u, .. }, LambdaTilde) => {
            for (zr, ui) in z.iter().zip(u) {
                for zij in zr {
                    entries.push((emb(zij)?, None, ui.clone()));
                    entries.push((emb(&-zij)?, None, ui.clone()));
                }
            }
            g_quadratic(b).inflate(2)
        }
        (Aux::Kummer { p, u, .. }, Kummer) => {
            // The witness roots are already the orbit zeta^j t_i, block by block.
            for (i, ui) in u.iter().enumerate() {
                for j in 0..*p as usize {
                    entries.push((w.roots[i * *p as usize + j].clone(), None, ui.clone()));
                }
            }
            Poly::monomial(Rational::one(), *p as usize)
        }
        _ => {
            return Err(Error::pre(format!(
                "{} curves need a {} witness, got {}",
                family.name(),
                family.witness_kind().name(),
                w.kind.name()
            )))
        }
    };
    Ok(Layout { inner, entries })
}

/// The `d` parameter implied by a witness.
pub fn witness_d<F: Field>(w: &CompositeWitness<F>) -> usize {
    match &w.aux {
        Aux::Kummer { p, .. } => *p as usize,
        Aux::Baseline { u } => u.len() / 2,
        Aux::B { u, .. } | Aux::Z { u, .. } => u.len() / 2,
    }
}

/// Squarefreeness over `Q`: a squarefree reduction at a prime that keeps
/// the degree is conclusive; otherwise fall back to an exact gcd.
pub fn is_squarefree_rational(f: &Poly<Rational>) -> bool {
    use crate::jacobian::{Fp, Modulus};
    if f.degree().is_none() {
        return false;
    }
    for p in [1_000_000_007u64, 998_244_353, 2_305_843_009_213_693_951] {
        let m = Modulus::new(p).expect("fixed primes");
        let Ok(fp) = f.try_map(&m, |c| Fp::from_rational(&m, c)) else {
            continue;
        };
        if fp.degree() == f.degree() && fp.is_squarefree() {
            return true;
        }
    }
    f.is_squarefree()
}

pub fn build_curve<F: RationalAlgebra>(
    family: Family,
    witness: &CompositeWitness<F>,
) -> Result<CurveSpec<F>> {
    let d = witness_d(witness);
    let expected = expected_counts(family, d)?;
    let lay = layout(family, witness)?;
    let (h, ell) = witness.outer.sqrt_approx()?;
    let half = witness.outer.degree().unwrap_or(0) / 2;
    if ell.degree() != Some(half - 1) {
        return Err(Error::Degenerate(Degeneracy::LowRemainder));
    }
    let base = ell.compose(&lay.inner)?;
    let f = if family.is_twisted() { &base * &Poly::x(&()) } else { base };
    if !is_squarefree_rational(&f) {
        return Err(Error::Degenerate(Degeneracy::NotSquarefree));
    }
    let ctx = witness.roots[0].ctx();
    let mut plus = Vec::with_capacity(lay.entries.len());
    let mut minus = Vec::with_capacity(lay.entries.len());
    for (x, twist, u) in &lay.entries {
        let mut y = h.eval(u);
        if let Some(s) = twist {
            y = &y * s;
        }
        if y.is_zero() {
            return Err(Error::Degenerate(Degeneracy::WeierstrassPoint));
        }
        plus.push(CurvePoint::Affine { x: x.clone(), y: F::embed(&ctx, &y) });
        minus.push(CurvePoint::Affine { x: x.clone(), y: F::embed(&ctx, &-y) });
    }
    let primary = plus.len();
    let mut points = plus;
    points.extend(minus);
    if family.is_twisted() {
        points.push(CurvePoint::Affine { x: F::zero(&ctx), y: F::zero(&ctx) });
    }
    let deg = f.degree().unwrap_or(0);
    if deg % 2 == 1 {
        points.push(CurvePoint::Infinity(Branch::Plus));
    }
    if !pairwise_distinct(&points) {
        return Err(Error::Degenerate(Degeneracy::CoincidentPoints));
    }
    Ok(CurveSpec {
        family,
        d,
        genus: genus_of_degree(deg),
        f,
        points,
        primary,
        h,
        ell,
        inner: lay.inner,
        witness: witness.clone(),
        expected: Some(expected),
    })
}

fn pairwise_distinct<F: PartialEq>(points: &[CurvePoint<F>]) -> bool {
    points.iter().enumerate().all(|(i, p)| points[..i].iter().all(|q| q != p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// One entry per listed point.
    pub on_curve: Vec<bool>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn on_curve<F: RationalAlgebra>(f: &Poly<Rational>, point: &CurvePoint<F>) -> bool {
    match point {
        CurvePoint::Infinity(_) => f.degree().is_some_and(|d| d % 2 == 1),
        CurvePoint::Affine { x, .. } => on_curve_prepared(f, &F::prepare(&x.ctx(), f), point),
    }
}

fn on_curve_prepared<F: RationalAlgebra>(
    f: &Poly<Rational>,
    prepared: &F::Prepared,
    point: &CurvePoint<F>,
) -> bool {
    match point {
        CurvePoint::Infinity(_) => f.degree().is_some_and(|d| d % 2 == 1),
        CurvePoint::Affine { x, y } => F::eval_eq_square(prepared, x, y),
    }
}

pub fn verify_points<F: RationalAlgebra>(curve: &CurveSpec<F>) -> VerificationReport {
    let mut checks = Vec::new();
    let on: Vec<bool> = match curve.witness.roots.first() {
        Some(r) => {
            let prepared = F::prepare(&r.ctx(), &curve.f);
            curve.points.iter().map(|p| on_curve_prepared(&curve.f, &prepared, p)).collect()
        }
        None => curve.points.iter().map(|p| on_curve(&curve.f, p)).collect(),
    };
    let bad: Vec<usize> = on.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i).collect();
    checks.push(Check {
        name: "on_curve",
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("all {} points satisfy y^2 = f(x)", on.len())
        } else {
            format!("points off the curve at indices {bad:?}")
        },
    });
    let distinct = pairwise_distinct(&curve.points);
    checks.push(Check {
        name: "distinct",
        pass: distinct,
        detail: String::from(if distinct { "points pairwise distinct" } else { "repeated point" }),
    });
    let sf = curve.f.degree().unwrap_or(0) >= 1 && is_squarefree_rational(&curve.f);
    checks.push(Check {
        name: "squarefree",
        pass: sf,
        detail: String::from(if sf { "f is squarefree" } else { "f has a repeated factor" }),
    });
    let deg = curve.f.degree().unwrap_or(0);
    let g_deg = genus_of_degree(deg);
    match expected_counts(curve.family, curve.d) {
        Ok(exp) => {
            let n = curve.points.len();
            checks.push(Check {
                name: "point_count",
                pass: n == exp.points,
                detail: format!("{n} points listed, table count {}", exp.points),
            });
            let pass = g_deg == exp.genus && curve.genus == g_deg;
            checks.push(Check {
                name: "genus",
                pass,
                detail: format!(
                    "deg f = {deg} gives genus {g_deg}; recorded {}, table {}",
                    curve.genus, exp.genus
                ),
            });
        }
        Err(e) => checks.push(Check {
            name: "point_count",
            pass: false,
            detail: format!("{e}"),
        }),
    }
    let wid = curve.witness.verify_identity().unwrap_or(false);
    checks.push(Check {
        name: "witness_identity",
        pass: wid,
        detail: String::from(if wid {
            "prod (x - root) = outer(inner(x))"
        } else {
            "witness product does not match outer(inner(x))"
        }),
    });
    VerificationReport { checks, on_curve: on }
}

/// Outcome of checking the function `y - h(inner(x))` (or its twisted
/// analogue) against the listed positive-branch points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub pass: bool,
    /// Lowest coefficient index at which `h(inner)^2 - l(inner)` and the
    /// product over the positive-branch points differ.
    pub mismatch_coefficient: Option<usize>,
    /// Positive-branch points whose `y` disagrees with the witness.
    pub bad_points: Vec<usize>,
    pub f_matches: bool,
    /// The relation certified, or `None` for the twisted families where the
    /// identity only certifies the points.
    pub relation: Option<String>,
}

pub fn relation_witness<F: RationalAlgebra>(curve: &CurveSpec<F>) -> Result<WitnessReport> {
    let ctx = curve.witness.roots.first().ok_or_else(|| Error::pre("witness without roots"))?.ctx();
    let lift = |p: &Poly<Rational>| p.map(&ctx, |c| F::embed(&ctx, c));
    let hi = curve.h.compose(&curve.inner)?;
    let li = curve.ell.compose(&curve.inner)?;
    let lhs = lift(&(&(&hi * &hi) - &li));
    let mut xs = Vec::with_capacity(curve.primary);
    for p in curve.primary_points() {
        match p {
            CurvePoint::Affine { x, .. } => xs.push(x.clone()),
            CurvePoint::Infinity(_) => return Err(Error::pre("point at infinity among table points")),
        }
    }
    let rhs = Poly::from_roots(&ctx, &xs);
    let len = lhs.coeffs().len().max(rhs.coeffs().len());
    let mismatch = (0..len).find(|&i| lhs.coeff(i) != rhs.coeff(i));

    let twisted = curve.family.is_twisted();
    // Untwisted: y = h(inner(x)). Twisted: y^2 = x h(inner(x))^2.
    let branch = if twisted { &(&hi * &hi) * &Poly::x(&()) } else { hi.clone() };
    let prepared = F::prepare(&ctx, &branch);
    let mut bad_points = Vec::new();
    for (i, p) in curve.primary_points().iter().enumerate() {
        let (x, y) = p.affine().expect("checked above");
        let ok = if twisted { F::eval_eq_square(&prepared, x, y) } else { F::eval_eq(&prepared, x, y) };
        if !ok {
            bad_points.push(i);
        }
    }
    let expected_f = if twisted { &li * &Poly::x(&()) } else { li.clone() };
    let f_matches = expected_f == curve.f;
    let pass = mismatch.is_none() && bad_points.is_empty() && f_matches;
    let relation = (!curve.family.is_twisted()).then(|| {
        format!("sum of eps over the {} positive-branch points is zero", curve.primary)
    });
    Ok(WitnessReport { pass, mismatch_coefficient: mismatch, bad_points, f_matches, relation })
}

/// For the twisted odd-degree families: `(0, 0)` is a rational Weierstrass
/// point, so `[D - inf]` is 2-torsion.
pub fn two_torsion_witness<F: Field>(curve: &CurveSpec<F>) -> Result<bool> {
    if !curve.family.is_twisted() {
        return Err(Error::pre(format!("{} has no (0, 0) point", curve.family.name())));
    }
    if !curve.has_odd_degree() {
        return Err(Error::pre("two-torsion witness needs odd deg f"));
    }
    Ok(curve.f.coeff(0).is_zero() && !curve.f.coeff(1).is_zero())
}
