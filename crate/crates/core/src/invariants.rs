//! Binary forms, the `GL_2` substitution action, and Igusa-Clebsch
//! invariants of sextics.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;

/// `sum coeffs[i] x^i z^(n - i)` with `n = coeffs.len() - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::pre("a binary form needs at least one coefficient"));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `F(x, 1)`.
    pub fn dehomogenize(&self) -> Poly<Rational> {
        Poly::new(&(), self.coeffs.clone())
    }

    fn zero(n: usize) -> Self {
        BinaryForm { coeffs: vec![Rational::zero(); n + 1] }
    }

    fn dx(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return BinaryForm::zero(0);
        }
        let c = (1..=n).map(|i| &self.coeffs[i] * &Rational::from(i as i64)).collect();
        BinaryForm { coeffs: c }
    }

    fn dz(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return BinaryForm::zero(0);
        }
        let c = (0..n).map(|i| &self.coeffs[i] * &Rational::from((n - i) as i64)).collect();
        BinaryForm { coeffs: c }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut c = vec![Rational::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        BinaryForm { coeffs: c }
    }

    fn add_scaled(&mut self, other: &Self, s: &Rational) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = &*a + &(b * s);
        }
    }

    fn scale(&self, s: &Rational) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// The constant of a degree-0 form.
    fn value(&self) -> Rational {
        debug_assert_eq!(self.degree(), 0);
        self.coeffs[0].clone()
    }
}

pub fn homogenize(f: &Poly<Rational>, n: usize) -> Result<BinaryForm> {
    if f.degree().is_some_and(|d| d > n) {
        return Err(Error::pre("polynomial degree exceeds the form degree"));
    }
    let coeffs = (0..=n).map(|i| f.coeff(i)).collect();
    BinaryForm::new(coeffs)
}

/// `F(a x + b z, c x + d z)` for `m = [[a, b], [c, d]]`.
pub fn gl2_act(m: &[[Rational; 2]; 2], form: &BinaryForm) -> Result<BinaryForm> {
    let [[a, b], [c, d]] = m;
    if (a * d - b * c).is_zero() {
        return Err(Error::NotInvertible);
    }
    let n = form.degree();
    let first = Poly::new(&(), vec![b.clone(), a.clone()]);
    let second = Poly::new(&(), vec![d.clone(), c.clone()]);
    let mut acc = Poly::zero(&());
    for (i, bi) in form.coeffs.iter().enumerate() {
        if bi.is_zero() {
            continue;
        }
        let term = &first.pow(i as u32) * &second.pow((n - i) as u32);
        acc = &acc + &term.scale(bi);
    }
    homogenize(&acc, n)
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * Rational::from(k))
}

fn binomial(n: usize, k: usize) -> Rational {
    &factorial(n) / &(&factorial(k) * &factorial(n - k))
}

/// The `k`-th transvectant `(f, g)_k` in the normalization
/// `(n-k)! (m-k)! / (n! m!) sum_j (-1)^j C(k, j) d^k f / dx^(k-j) dz^j * d^k g / dx^j dz^(k-j)`.
fn transvectant(f: &BinaryForm, g: &BinaryForm, k: usize) -> BinaryForm {
    let (n, m) = (f.degree(), g.degree());
    assert!(k <= n && k <= m);
    let mut out = BinaryForm::zero(n + m - 2 * k);
    for j in 0..=k {
        let mut df = f.clone();
        for _ in 0..k - j {
            df = df.dx();
        }
        for _ in 0..j {
            df = df.dz();
        }
        let mut dg = g.clone();
        for _ in 0..j {
            dg = dg.dx();
        }
        for _ in 0..k - j {
            dg = dg.dz();
        }
        let mut s = binomial(k, j);
        if j % 2 == 1 {
            s = -s;
        }
        out.add_scaled(&df.mul(&dg), &s);
    }
    let norm = &(&factorial(n - k) * &factorial(m - k)) / &(&factorial(n) * &factorial(m));
    out.scale(&norm)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IgusaTuple {
    pub i2: Rational,
    pub i4: Rational,
    pub i6: Rational,
    pub i10: Rational,
}

impl IgusaTuple {
    pub fn as_array(&self) -> [&Rational; 4] {
        [&self.i2, &self.i4, &self.i6, &self.i10]
    }

    /// Multiplies `I_2k` by `r^(2k)`.
    pub fn scaled(&self, r: &Rational) -> Self {
        let r2 = r * r;
        IgusaTuple {
            i2: &self.i2 * &r2,
            i4: &self.i4 * &r2.powi(2),
            i6: &self.i6 * &r2.powi(3),
            i10: &self.i10 * &r2.powi(5),
        }
    }
}

pub fn igusa_clebsch(form: &BinaryForm) -> Result<IgusaTuple> {
    if form.degree() != 6 {
        return Err(Error::pre("Igusa-Clebsch invariants need a sextic form"));
    }
    let f = form;
    let i = transvectant(f, f, 4);
    let delta = transvectant(&i, &i, 2);
    let y1 = transvectant(f, &i, 4);
    let y2 = transvectant(&i, &y1, 2);
    let y3 = transvectant(&i, &y2, 2);
    let a = transvectant(f, f, 6).value();
    let b = transvectant(&i, &i, 4).value();
    let c = transvectant(&i, &delta, 4).value();
    let d = transvectant(&y3, &y1, 2).value();
    let q = |n: i64| Rational::from(n);
    let a2 = &a * &a;
    let a3 = &a2 * &a;
    let a5 = &a3 * &a2;
    let i2 = q(-120) * &a;
    let i4 = q(-720) * &a2 + q(6750) * &b;
    let i6 = q(8640) * &a3 - q(108000) * &a * &b + q(202500) * &c;
    let i10 = q(-62208) * &a5 + q(972000) * &a3 * &b + q(1620000) * &a2 * &c
        - q(3037500) * &a * &b * &b
        - q(6075000) * &b * &c
        - q(4556250) * &d;
    Ok(IgusaTuple { i2, i4, i6, i10 })
}

/// Whether some `r != 0` (over an algebraic closure) satisfies
/// `t2.I_2k = r^(2k) t1.I_2k` for all four invariants. Decided by
/// comparing `(I'_a / I_a)^wb` with `(I'_b / I_b)^wa` for weights 1, 2, 3, 5.
pub fn weighted_equivalent(t1: &IgusaTuple, t2: &IgusaTuple) -> Result<bool> {
    const WEIGHTS: [i32; 4] = [1, 2, 3, 5];
    let a = t1.as_array();
    let b = t2.as_array();
    if a.iter().all(|x| x.is_zero()) && b.iter().all(|x| x.is_zero()) {
        return Err(Error::Indeterminate(alloc::string::String::from(
            "both invariant tuples are zero",
        )));
    }
    if (0..4).any(|k| a[k].is_zero() != b[k].is_zero()) {
        return Ok(false);
    }
    let ratios: Vec<(i32, Rational)> =
        (0..4).filter(|&k| !a[k].is_zero()).map(|k| (WEIGHTS[k], b[k] / a[k])).collect();
    for (x, (wx, qx)) in ratios.iter().enumerate() {
        for (wy, qy) in &ratios[x + 1..] {
            if qx.powi(*wy) != qy.powi(*wx) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
