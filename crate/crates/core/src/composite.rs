//! Composite tuples: lists of roots whose product polynomial factors as
//! `outer(inner(x))`, together with the scalars curve builders need.

use alloc::vec::Vec;

use crate::algebra::{norm_one_param, CycloElem, QuadAlg, QuadElem};
use crate::error::{Degeneracy, Error, Result};
use crate::field::{Field, RationalAlgebra};
use crate::poly::Poly;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    /// Doubled points of the Eisenstein torus, blocks of six.
    B,
    /// Gaussian torus, blocks of four.
    Z,
    /// Orbits `zeta^j t` of the `p`-th roots of unity.
    Kummer,
    /// Free roots with `inner = x`.
    Baseline,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::B => "B",
            WitnessKind::Z => "Z",
            WitnessKind::Kummer => "kummer",
            WitnessKind::Baseline => "baseline",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "B" => Some(WitnessKind::B),
            "Z" => Some(WitnessKind::Z),
            "kummer" => Some(WitnessKind::Kummer),
            "baseline" => Some(WitnessKind::Baseline),
            _ => None,
        }
    }
}

/// Scalars attached to a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Aux {
    B {
        b: Rational,
        /// Rows `(T_i1, T_i2, T_i3)` summing to zero.
        rows: Vec<[Rational; 3]>,
        /// `t_i = T_i1 T_i2 T_i3`.
        t: Vec<Rational>,
        /// `u_i = t_i^2`.
        u: Vec<Rational>,
    },
    Z {
        b: Rational,
        /// Coordinates `(z_i1, z_i2)` of the torus point.
        z: Vec<[Rational; 2]>,
        /// `t_ij = z_ij^2`.
        t: Vec<[Rational; 2]>,
        /// `u_i = -t_i1 t_i2`.
        u: Vec<Rational>,
    },
    Kummer {
        p: u32,
        t: Vec<Rational>,
        u: Vec<Rational>,
    },
    Baseline {
        u: Vec<Rational>,
    },
}

impl Aux {
    /// Roots of the outer polynomial.
    pub fn u(&self) -> &[Rational] {
        match self {
            Aux::B { u, .. } | Aux::Z { u, .. } | Aux::Kummer { u, .. } | Aux::Baseline { u } => u,
        }
    }

    pub fn b(&self) -> Option<&Rational> {
        match self {
            Aux::B { b, .. } | Aux::Z { b, .. } => Some(b),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeWitness<F: Field> {
    pub kind: WitnessKind,
    /// Number of blocks.
    pub n: usize,
    pub roots: Vec<F>,
    pub inner: Poly<Rational>,
    pub outer: Poly<Rational>,
    pub aux: Aux,
    pub seed: Option<u64>,
}

impl<F: RationalAlgebra> CompositeWitness<F> {
    pub fn block_size(&self) -> usize {
        self.roots.len() / self.n.max(1)
    }

    pub fn blocks(&self) -> Vec<Vec<F>> {
        self.roots.chunks(self.block_size()).map(|c| c.to_vec()).collect()
    }

    /// Checks `prod (x - root) = outer(inner(x))` by full expansion.
    pub fn verify_identity(&self) -> Result<bool> {
        let ctx = self.roots.first().ok_or_else(|| Error::pre("witness without roots"))?.ctx();
        let lhs = Poly::from_roots(&ctx, &self.roots);
        let composed = self.outer.compose(&self.inner)?;
        let rhs = composed.map(&ctx, |c| F::embed(&ctx, c));
        Ok(lhs == rhs)
    }
}

/// `x (x^2 + b)`.
pub fn g_cubic(b: &Rational) -> Poly<Rational> {
    Poly::new(&(), alloc::vec![Rational::zero(), b.clone(), Rational::zero(), Rational::one()])
}

/// `x (x + b)^2`.
pub fn g_hat(b: &Rational) -> Poly<Rational> {
    Poly::new(&(), alloc::vec![Rational::zero(), b * b, b + b, Rational::one()])
}

/// `x^2 - b x`.
pub fn g_quadratic(b: &Rational) -> Poly<Rational> {
    Poly::new(&(), alloc::vec![Rational::zero(), -b, Rational::one()])
}

fn has_repeats(values: &[Rational]) -> bool {
    let mut v = values.to_vec();
    v.sort();
    v.windows(2).any(|w| w[0] == w[1])
}

/// Torus points `z_1 = w^-1`, `z_i = norm_one(s_i) * w^-1`.
fn torus_points(n: usize, w: &QuadElem, s: &[Rational], alg: QuadAlg) -> Result<Vec<QuadElem>> {
    if w.alg != alg {
        return Err(Error::FieldMismatch);
    }
    if n < 2 || s.len() != n - 1 {
        return Err(Error::pre("need n >= 2 and n - 1 torus parameters"));
    }
    let w_inv = w.inv().ok_or(Error::NotInvertible)?;
    let mut out = Vec::with_capacity(n);
    out.push(w_inv.clone());
    for si in s {
        out.push(norm_one_param(si, alg).mul(&w_inv));
    }
    Ok(out)
}

fn outer_from(u: &[Rational]) -> Poly<Rational> {
    Poly::from_roots(&(), u)
}

pub fn param_b(n: usize, w: &QuadElem, s: &[Rational]) -> Result<CompositeWitness<Rational>> {
    let z = torus_points(n, w, s, QuadAlg::Eisenstein)?;
    let rows: Vec<[Rational; 3]> = z
        .iter()
        .map(|zi| {
            let t1 = zi.a.clone();
            let t2 = zi.b.clone();
            let t3 = -(&t1 + &t2);
            [t1, t2, t3]
        })
        .collect();
    let b = -z[0].norm();
    let t: Vec<Rational> = rows.iter().map(|r| &r[0] * &r[1] * &r[2]).collect();
    let u: Vec<Rational> = t.iter().map(|ti| ti * ti).collect();
    if has_repeats(&u) {
        return Err(Error::Degenerate(Degeneracy::RepeatedOuterRoot));
    }
    if rows.iter().flatten().any(|c| c.is_zero()) {
        return Err(Error::Degenerate(Degeneracy::ZeroCoordinate));
    }
    if b.is_zero() {
        return Err(Error::Degenerate(Degeneracy::ZeroB));
    }
    let mut roots = Vec::with_capacity(6 * n);
    for r in &rows {
        roots.extend(r.iter().cloned());
        roots.extend(r.iter().map(|c| -c));
    }
    let g = g_cubic(&b);
    Ok(CompositeWitness {
        kind: WitnessKind::B,
        n,
        roots,
        inner: &g * &g,
        outer: outer_from(&u),
        aux: Aux::B { b, rows, t, u },
        seed: None,
    })
}

pub fn param_z(n: usize, w: &QuadElem, s: &[Rational]) -> Result<CompositeWitness<Rational>> {
    let pts = torus_points(n, w, s, QuadAlg::Gaussian)?;
    let z: Vec<[Rational; 2]> = pts.iter().map(|p| [p.a.clone(), p.b.clone()]).collect();
    let t: Vec<[Rational; 2]> = z.iter().map(|r| [&r[0] * &r[0], &r[1] * &r[1]]).collect();
    let b = &t[0][0] + &t[0][1];
    assert!(!b.is_zero(), "Gaussian norm of a nonzero element is positive");
    let u: Vec<Rational> = t.iter().map(|r| -(&r[0] * &r[1])).collect();
    if has_repeats(&u) {
        return Err(Error::Degenerate(Degeneracy::RepeatedOuterRoot));
    }
    if z.iter().flatten().any(|c| c.is_zero()) {
        return Err(Error::Degenerate(Degeneracy::ZeroCoordinate));
    }
    let mut roots = Vec::with_capacity(4 * n);
    for r in &z {
        roots.extend([r[0].clone(), -&r[0], r[1].clone(), -&r[1]]);
    }
    Ok(CompositeWitness {
        kind: WitnessKind::Z,
        n,
        roots,
        inner: g_quadratic(&b).inflate(2),
        outer: outer_from(&u),
        aux: Aux::Z { b, z, t, u },
        seed: None,
    })
}

pub fn kummer_tuple(p: u32, t: &[Rational]) -> Result<CompositeWitness<CycloElem>> {
    if p < 3 || !crate::algebra::is_prime_u32(p) {
        return Err(Error::pre("kummer tuples need an odd prime p"));
    }
    if t.len() != 6 {
        return Err(Error::pre("kummer tuples take six parameters"));
    }
    if t.iter().any(|ti| ti.is_zero()) {
        return Err(Error::Degenerate(Degeneracy::ZeroCoordinate));
    }
    if has_repeats(t) {
        return Err(Error::Degenerate(Degeneracy::RepeatedRoot));
    }
    let u: Vec<Rational> = t.iter().map(|ti| ti.powi(p as i32)).collect();
    if has_repeats(&u) {
        return Err(Error::Degenerate(Degeneracy::RepeatedOuterRoot));
    }
    let zetas: Vec<CycloElem> =
        (0..p as u64).map(|j| CycloElem::zeta_pow(p, j)).collect::<Result<_>>()?;
    let mut roots = Vec::with_capacity(6 * p as usize);
    for ti in t {
        let lifted = CycloElem::embed(&p, ti);
        roots.extend(zetas.iter().map(|z| z.mul(&lifted)));
    }
    Ok(CompositeWitness {
        kind: WitnessKind::Kummer,
        n: 6,
        roots,
        inner: Poly::monomial(Rational::one(), p as usize),
        outer: outer_from(&u),
        aux: Aux::Kummer { p, t: t.to_vec(), u },
        seed: None,
    })
}

pub fn baseline_tuple(d: usize, u: &[Rational]) -> Result<CompositeWitness<Rational>> {
    if d < 2 || u.len() != 2 * d {
        return Err(Error::pre("baseline tuples need d >= 2 and 2d roots"));
    }
    if has_repeats(u) {
        return Err(Error::Degenerate(Degeneracy::RepeatedOuterRoot));
    }
    Ok(CompositeWitness {
        kind: WitnessKind::Baseline,
        n: 2 * d,
        roots: u.to_vec(),
        inner: Poly::x(&()),
        outer: outer_from(u),
        aux: Aux::Baseline { u: u.to_vec() },
        seed: None,
    })
}

/// True iff the power sums of orders `1..e-1` agree across the blocks,
/// where `e` is the common block size.
pub fn check_pte<F: Field>(blocks: &[Vec<F>]) -> Result<bool> {
    let Some(first) = blocks.first() else {
        return Err(Error::pre("no blocks"));
    };
    let e = first.len();
    if e == 0 || blocks.iter().any(|b| b.len() != e) {
        return Err(Error::pre("blocks must be nonempty and of equal size"));
    }
    let ctx = first[0].ctx();
    let sums = |block: &Vec<F>| -> Vec<F> {
        let mut powers: Vec<F> = block.clone();
        let mut out = Vec::with_capacity(e.saturating_sub(1));
        for _ in 1..e {
            out.push(powers.iter().fold(F::zero(&ctx), |acc, x| acc.add(x)));
            for (pw, x) in powers.iter_mut().zip(block) {
                *pw = pw.mul(x);
            }
        }
        out
    };
    let reference = sums(first);
    Ok(blocks[1..].iter().all(|b| sums(b) == reference))
}
