#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use ccurve_core::curve::Family;
use ccurve_core::jacobian::{Fp, FpCurve, Modulus, MumfordDivisor};
use ccurve_core::Poly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fp_curve(p: u64, f: &[u64]) -> FpCurve {
    let m = Modulus::new(p).unwrap();
    FpCurve::new(Poly::new(&m, f.iter().map(|&c| Fp::new(&m, c)).collect())).unwrap()
}

/// `F_p[s] / (s^2 - nr)` for a small prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq2 {
    pub a: u64,
    pub b: u64,
}

#[derive(Clone, Copy)]
pub struct Ext {
    p: u64,
    nr: u64,
}

impl Ext {
    pub fn new(p: u64) -> Self {
        let nr = (2..p).find(|&c| (1..p).all(|y| y * y % p != c)).unwrap();
        Ext { p, nr }
    }
    pub fn base(&self, a: u64) -> Fq2 {
        Fq2 { a: a % self.p, b: 0 }
    }
    pub fn add(&self, x: Fq2, y: Fq2) -> Fq2 {
        Fq2 { a: (x.a + y.a) % self.p, b: (x.b + y.b) % self.p }
    }
    pub fn neg(&self, x: Fq2) -> Fq2 {
        Fq2 { a: (self.p - x.a) % self.p, b: (self.p - x.b) % self.p }
    }
    pub fn mul(&self, x: Fq2, y: Fq2) -> Fq2 {
        let p = self.p;
        Fq2 { a: (x.a * y.a + self.nr * (x.b * y.b % p)) % p, b: (x.a * y.b + x.b * y.a) % p }
    }
    pub fn inv(&self, x: Fq2) -> Fq2 {
        self.all().find(|&y| self.mul(x, y) == self.base(1)).expect("nonzero")
    }
    pub fn all(&self) -> impl Iterator<Item = Fq2> + '_ {
        (0..self.p).flat_map(move |a| (0..self.p).map(move |b| Fq2 { a, b }))
    }
    pub fn is_zero(&self, x: Fq2) -> bool {
        x.a == 0 && x.b == 0
    }
    pub fn eval(&self, f: &[u64], x: Fq2) -> Fq2 {
        f.iter().rev().fold(self.base(0), |acc, &c| self.add(self.mul(acc, x), self.base(c)))
    }
}

const TERMS: usize = 10;

type Series = Vec<Fq2>;

fn s_mul(e: &Ext, x: &Series, y: &Series) -> Series {
    let mut out = vec![e.base(0); TERMS];
    for i in 0..TERMS {
        for j in 0..TERMS - i {
            out[i + j] = e.add(out[i + j], e.mul(x[i], y[j]));
        }
    }
    out
}

fn s_eval(e: &Ext, f: &[u64], x: &Series) -> Series {
    let mut acc = vec![e.base(0); TERMS];
    for &c in f.iter().rev() {
        acc = s_mul(e, &acc, x);
        acc[0] = e.add(acc[0], e.base(c));
    }
    acc
}

fn valuation(e: &Ext, s: &Series) -> u32 {
    s.iter().position(|c| !e.is_zero(*c)).expect("order below truncation") as u32
}

/// Order of vanishing of `a(x) + b(x) y` at the affine point `(x0, y0)`,
/// from local power series (no divisor arithmetic involved).
fn order_at(e: &Ext, f: &[u64], a: &[u64], b: &[u64], x0: Fq2, y0: Fq2) -> u32 {
    let zero = e.base(0);
    let (xs, ys) = if !e.is_zero(y0) {
        // Parameter t = x - x0; y(t)^2 = f(x0 + t).
        let mut xs = vec![zero; TERMS];
        xs[0] = x0;
        xs[1] = e.base(1);
        let ft = s_eval(e, f, &xs);
        let mut ys = vec![zero; TERMS];
        ys[0] = y0;
        let inv2y = e.inv(e.add(y0, y0));
        for n in 1..TERMS {
            let mut known = zero;
            for i in 1..n {
                known = e.add(known, e.mul(ys[i], ys[n - i]));
            }
            ys[n] = e.mul(e.add(ft[n], e.neg(known)), inv2y);
        }
        (xs, ys)
    } else {
        // Weierstrass point: parameter s = y, solve f(x0 + t(s)) = s^2.
        let mut shift = vec![zero; TERMS];
        shift[0] = x0;
        shift[1] = e.base(1);
        let ft = s_eval(e, f, &shift);
        let inv_f1 = e.inv(ft[1]);
        let mut t = vec![zero; TERMS];
        for _ in 0..TERMS {
            let mut rhs = [zero; TERMS];
            rhs[2] = e.base(1);
            let mut pw = s_mul(e, &t, &t);
            for fi in ft.iter().skip(2) {
                for k in 0..TERMS {
                    rhs[k] = e.add(rhs[k], e.neg(e.mul(*fi, pw[k])));
                }
                pw = s_mul(e, &pw, &t);
            }
            t = rhs.iter().map(|c| e.mul(*c, inv_f1)).collect();
        }
        let mut xs = t;
        xs[0] = e.add(xs[0], x0);
        let mut ys = vec![zero; TERMS];
        ys[1] = e.base(1);
        (xs, ys)
    };
    let mut phi = s_eval(e, a, &xs);
    let bx = s_mul(e, &s_eval(e, b, &xs), &ys);
    for k in 0..TERMS {
        phi[k] = e.add(phi[k], bx[k]);
    }
    valuation(e, &phi)
}

/// Effective divisor as a sorted multiset of points over `F_{p^2}`.
type Effective = Vec<(Fq2, Fq2)>;

fn effective_of(e: &Ext, d: &MumfordDivisor, negate: bool) -> Effective {
    let u: Vec<u64> = d.u().coeffs().iter().map(|c| c.value()).collect();
    let v: Vec<u64> = d.v().coeffs().iter().map(|c| c.value()).collect();
    let mut out = Vec::new();
    let deg = u.len() - 1;
    let roots: Vec<Fq2> = e.all().filter(|&x| e.is_zero(e.eval(&u, x))).collect();
    for x in &roots {
        let y = e.eval(&v, *x);
        out.push((*x, if negate { e.neg(y) } else { y }));
    }
    if deg == 2 && roots.len() == 1 {
        let dup = out[0];
        out.push(dup);
    }
    assert_eq!(out.len(), deg);
    out.sort();
    out
}

pub struct BruteForce {
    ext: Ext,
    /// Zero divisors of every nonzero function in `L(6 inf)`.
    principal: BTreeSet<Effective>,
    classes: Vec<MumfordDivisor>,
    points_fp: usize,
    points_fq2: usize,
}

pub fn brute_force(p: u64, f: &[u64]) -> (FpCurve, BruteForce) {
    let curve = fp_curve(p, f);
    let m = *curve.modulus();
    let ext = Ext::new(p);
    let mut pts = Vec::new();
    for x in ext.all() {
        let fx = ext.eval(f, x);
        for y in ext.all() {
            if ext.mul(y, y) == fx {
                pts.push((x, y));
            }
        }
    }
    let points_fp = 1 + pts.iter().filter(|(x, y)| x.b == 0 && y.b == 0).count();
    let points_fq2 = 1 + pts.len();

    // Basis 1, x, x^2, x^3, y of L(6 inf) on a genus-2 curve.
    let mut principal = BTreeSet::new();
    for code in 1..p.pow(5) {
        let mut digits = [0u64; 5];
        let mut c = code;
        for d in &mut digits {
            *d = c % p;
            c /= p;
        }
        let a = &digits[..4];
        let b = &digits[4..];
        let mut div = Vec::new();
        for &(x0, y0) in &pts {
            let ord = order_at(&ext, f, a, b, x0, y0);
            div.extend(std::iter::repeat_n((x0, y0), ord as usize));
        }
        div.sort();
        let pole_a = 2 * a.iter().rposition(|&c| c != 0).unwrap_or(0);
        let pole = if b[0] != 0 { pole_a.max(5) } else { pole_a };
        // Zeros off F_{p^2} never match a test divisor.
        assert!(div.len() <= pole);
        if div.len() == pole {
            principal.insert(div);
        }
    }

    // All reduced Mumford pairs, by exhaustive search.
    let fp = |c: u64| Fp::new(&m, c);
    let mut classes = vec![curve.identity()];
    for a in 0..p {
        for b in 0..p {
            if let Ok(d) = curve.divisor(Poly::new(&m, vec![fp(a), fp(1)]), Poly::constant(fp(b))) {
                classes.push(d);
            }
        }
    }
    for u0 in 0..p {
        for u1 in 0..p {
            for v0 in 0..p {
                for v1 in 0..p {
                    let u = Poly::new(&m, vec![fp(u0), fp(u1), fp(1)]);
                    let v = Poly::new(&m, vec![fp(v0), fp(v1)]);
                    let rem = (&(&v * &v) - curve.f()).rem(&u).unwrap();
                    if rem.is_zero() {
                        classes.push(curve.divisor(u, v).unwrap());
                    }
                }
            }
        }
    }
    (curve, BruteForce { ext, principal, classes, points_fp, points_fq2 })
}

impl BruteForce {
    /// `D1 + D2 = D3` iff `E1 + E2 + iota(E3)` is the zero divisor of a
    /// function with poles only at infinity.
    pub fn sum_is(&self, d1: &MumfordDivisor, d2: &MumfordDivisor, d3: &MumfordDivisor) -> bool {
        let mut e = effective_of(&self.ext, d1, false);
        e.extend(effective_of(&self.ext, d2, false));
        e.extend(effective_of(&self.ext, d3, true));
        e.sort();
        self.principal.contains(&e)
    }
}

pub fn brute_force_table(p: u64, f: &[u64]) {
    let (curve, bf) = brute_force(p, f);
    let q = p as i64;
    // #J(F_p) for genus 2 from point counts over F_p and F_p^2.
    let n1 = bf.points_fp as i64;
    let n2 = bf.points_fq2 as i64;
    assert_eq!(bf.classes.len() as i64, (n1 * n1 + n2) / 2 - q);
    for d1 in &bf.classes {
        for d2 in &bf.classes {
            let sum = curve.add(d1, d2).unwrap();
            let matches: Vec<&MumfordDivisor> =
                bf.classes.iter().filter(|d3| bf.sum_is(d1, d2, d3)).collect();
            assert_eq!(matches, vec![&sum], "{d1:?} + {d2:?}");
        }
    }
}


/// Rows of the published tables, written in terms of `g0` as printed.
pub fn table_row(family: Family, d: usize) -> Option<(usize, usize, usize)> {
    use Family::*;
    let odd = d % 2 == 1;
    let g0 = if odd { (d.checked_sub(3)?) / 2 } else { (d.checked_sub(2)?) / 2 };
    Some(match (family, d) {
        (Gamma1 | Baseline, 2 | 3) => return None,
        (Gamma1, _) if !odd => (g0, 8 * g0 + 9, 4 * g0 + 3),
        (Gamma1, _) => (g0, 8 * g0 + 12, 4 * g0 + 5),
        (Gamma2 | GammaTilde, 2) => return None,
        (Gamma2, 3) => (1, 14, 6),
        (Gamma2, _) if !odd => (g0, 8 * g0 + 9, 4 * g0 + 4),
        (Gamma2, _) => {
            let g = g0 + 1;
            (g, 8 * g + 6, 4 * g + 2)
        }
        (GammaTilde, 3) => (1, 24, 6),
        (GammaTilde, _) => {
            let g = if odd { 2 * g0 + 1 } else { 2 * g0 };
            (g, 8 * g + 16, 4 * g + 7)
        }
        (Theta1, 2) | (Theta2, 2) => (1, 25, 8),
        (Theta1, 3) => (2, 36, 12),
        (Theta1, _) if !odd => {
            let g = 3 * g0 + 1;
            (g, 8 * g + 17, 4 * g + 7)
        }
        (Theta1, _) => {
            let g = 3 * g0 + 2;
            (g, 8 * g + 20, 4 * g + 9)
        }
        (Theta2, 3) => (3, 38, 18),
        (Theta2, _) if !odd => {
            let g = 3 * g0 + 1;
            (g, 8 * g + 17, 4 * g + 8)
        }
        (Theta2, _) => {
            let g = 3 * g0 + 3;
            (g, 8 * g + 14, 4 * g + 6)
        }
        (ThetaTilde, 2) => (2, 48, 16),
        (ThetaTilde, 3) => (5, 72, 30),
        (ThetaTilde, _) => {
            let g = if odd { 6 * g0 + 5 } else { 6 * g0 + 2 };
            (g, 8 * g + 32, 4 * g + 15)
        }
        (Lambda1, 2) => return None,
        (Lambda1, 3) => (1, 24, 6),
        (Lambda1, _) => (d - 2, 8 * (d - 2) + 16, 4 * (d - 2) + 7),
        (Lambda2, _) => (d - 1, 8 * d + 2, 4 * d),
        (LambdaTilde, _) => (2 * d - 3, 16 * d, 0),
        (Kummer, _) => return None,
        (Baseline, _) => (g0, 4 * d + usize::from(!odd), 2 * d - 1),
    })
}


fn random_divisor(fc: &FpCurve, roots: &HashMap<u64, u64>, rng: &mut impl Rng) -> MumfordDivisor {
    let p = fc.p();
    let mut acc = fc.identity();
    for _ in 0..fc.genus() {
        let pt = loop {
            let x = rng.gen_range(0..p);
            let fx = fc.f().eval(&fc.fp(x)).value();
            if let Some(&y) = roots.get(&fx) {
                let y = if rng.gen() { y } else { (p - y) % p };
                break fc.point(fc.fp(x), fc.fp(y)).unwrap();
            }
        };
        acc = fc.add(&acc, &fc.scalar_mul(rng.gen_range(-50..50), &pt).unwrap()).unwrap();
    }
    acc
}

/// Commutativity, associativity, identity, inverse and scalar linearity on
/// random triples built from random points.
pub fn group_law_suite(fc: &FpCurve, triples: usize, seed: u64) {
    let p = fc.p();
    let roots: HashMap<u64, u64> = (0..p).map(|y| (y * y % p, y)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = fc.identity();
    for _ in 0..triples {
        let a = random_divisor(fc, &roots, &mut rng);
        let b = random_divisor(fc, &roots, &mut rng);
        let e = random_divisor(fc, &roots, &mut rng);
        let ab = fc.add(&a, &b).unwrap();
        assert_eq!(ab, fc.add(&b, &a).unwrap());
        assert_eq!(fc.add(&ab, &e).unwrap(), fc.add(&a, &fc.add(&b, &e).unwrap()).unwrap());
        assert_eq!(fc.add(&a, &id).unwrap(), a);
        assert!(fc.add(&a, &fc.neg(&a).unwrap()).unwrap().is_identity());
        let (n, k) = (rng.gen_range(-40i64..40), rng.gen_range(-40i64..40));
        assert_eq!(
            fc.scalar_mul(n + k, &a).unwrap(),
            fc.add(&fc.scalar_mul(n, &a).unwrap(), &fc.scalar_mul(k, &a).unwrap()).unwrap()
        );
        assert!(ab.u().degree().unwrap() <= fc.genus());
    }
}
