//! Bounded search for integer relations among divisor classes, filtered
//! across several primes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::curve::{CurvePoint, CurveSpec, Family};
use crate::error::{Error, Result};
use crate::jacobian::fp::is_prime_u64;
use crate::jacobian::mumford::{FpCurve, MumfordDivisor};
use crate::jacobian::reduce::{reduce_class, reduce_curve, ClassKind};
use crate::rational::Rational;

pub const SCOPE_NOTE: &str =
    "certifies only: no relation with support <= s and height <= B beyond those listed";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveParams {
    pub prime_count: usize,
    pub prime_min: u64,
    pub bound: u32,
    pub support: usize,
    pub op_budget: u64,
}

impl Default for SieveParams {
    fn default() -> Self {
        SieveParams { prime_count: 5, prime_min: 1_000, bound: 10, support: 3, op_budget: 100_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub labels: Vec<String>,
    pub primes: Vec<u64>,
    pub bound: u32,
    pub support: usize,
    /// Vectors vanishing at every prime, first nonzero entry positive.
    pub found: Vec<Vec<i64>>,
    /// Generators of the relations expected to hold.
    pub claimed: Vec<Vec<i64>>,
    /// Members of the claimed lattice inside the search window.
    pub expected: Vec<Vec<i64>>,
    /// Survivors outside the claimed lattice.
    pub unexpected: Vec<Vec<i64>>,
    /// Claimed window members the sieve did not find.
    pub missing: Vec<Vec<i64>>,
    /// Candidates surviving the first prime only.
    pub first_prime_hits: usize,
    pub group_ops: u64,
    pub verdict: Verdict,
}

struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    fn spend(&mut self, n: u64) -> Result<()> {
        self.used += n;
        if self.used > self.limit {
            Err(Error::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

/// Classes reduced at one prime.
pub type ReducedClasses = (FpCurve, Vec<MumfordDivisor>);

/// Enumerates integer vectors with at most `support` nonzero entries of
/// absolute value at most `bound` (first nonzero entry positive) and keeps
/// those vanishing at every prime.
pub fn relation_sieve(
    reduced: &[ReducedClasses],
    labels: Vec<String>,
    bound: u32,
    support: usize,
    op_budget: u64,
    claimed: &[Vec<i64>],
) -> Result<RelationReport> {
    let (first_curve, first) = reduced.first().ok_or_else(|| Error::pre("no primes"))?;
    let k = first.len();
    if reduced.iter().any(|(_, c)| c.len() != k) {
        return Err(Error::pre("class lists differ in length across primes"));
    }
    if support == 0 || support > k {
        return Err(Error::pre("support must lie in 1..=number of classes"));
    }
    if bound == 0 {
        return Err(Error::pre("bound must be positive"));
    }
    let b = bound as i64;
    let mut budget = Budget { used: 0, limit: op_budget };

    // multiples[i][a - 1] = a * D_i for a in 1..=B
    let mut multiples: Vec<Vec<MumfordDivisor>> = Vec::with_capacity(k);
    for d in first {
        let mut row = Vec::with_capacity(bound as usize);
        let mut acc = d.clone();
        row.push(acc.clone());
        for _ in 1..bound {
            acc = first_curve.add(&acc, d)?;
            row.push(acc.clone());
        }
        budget.spend(bound as u64)?;
        multiples.push(row);
    }
    let mult = |i: usize, a: i64| -> Result<MumfordDivisor> {
        let m = &multiples[i][(a.unsigned_abs() - 1) as usize];
        if a > 0 {
            Ok(m.clone())
        } else {
            first_curve.neg(m)
        }
    };
    // Every +-a * D_i keyed by its Mumford form.
    let mut lookup: BTreeMap<Vec<u64>, Vec<(usize, i64)>> = BTreeMap::new();
    for i in 0..k {
        for a in (-b..=b).filter(|&a| a != 0) {
            lookup.entry(mult(i, a)?.key()).or_default().push((i, a));
        }
    }

    let mut candidates: BTreeSet<Vec<i64>> = BTreeSet::new();
    // Support one.
    for i in 0..k {
        for a in 1..=b {
            if multiples[i][(a - 1) as usize].is_identity() {
                let mut v = vec![0; k];
                v[i] = a;
                candidates.insert(v);
            }
        }
    }
    // Support t >= 2: partial sums over t - 1 indices, last index by lookup.
    for t in 2..=support {
        let mut idx = Vec::with_capacity(t - 1);
        let mut coef = Vec::with_capacity(t - 1);
        extend_partial(
            first_curve,
            &mult,
            &lookup,
            k,
            b,
            t - 1,
            &mut idx,
            &mut coef,
            None,
            &mut candidates,
            &mut budget,
        )?;
    }
    let first_prime_hits = candidates.len();

    // Re-test every candidate from scratch at every prime.
    let mut found = Vec::new();
    'cand: for v in candidates {
        for (curve, classes) in reduced {
            budget.spend(v.iter().filter(|c| **c != 0).count() as u64 * 8)?;
            if !curve.combination(&v, classes)?.is_identity() {
                continue 'cand;
            }
        }
        found.push(v);
    }

    let expected = expected_survivors(claimed, k, bound, support);
    let found_set: BTreeSet<&Vec<i64>> = found.iter().collect();
    let expected_set: BTreeSet<&Vec<i64>> = expected.iter().collect();
    let unexpected: Vec<Vec<i64>> =
        found.iter().filter(|v| !expected_set.contains(v)).cloned().collect();
    let missing: Vec<Vec<i64>> =
        expected.iter().filter(|v| !found_set.contains(v)).cloned().collect();
    let verdict = if unexpected.is_empty() && missing.is_empty() { Verdict::Pass } else { Verdict::Fail };
    Ok(RelationReport {
        labels,
        primes: reduced.iter().map(|(c, _)| c.p()).collect(),
        bound,
        support,
        found,
        claimed: claimed.to_vec(),
        expected,
        unexpected,
        missing,
        first_prime_hits,
        group_ops: budget.used,
        verdict,
    })
}

#[allow(clippy::too_many_arguments)]
fn extend_partial(
    curve: &FpCurve,
    mult: &dyn Fn(usize, i64) -> Result<MumfordDivisor>,
    lookup: &BTreeMap<Vec<u64>, Vec<(usize, i64)>>,
    k: usize,
    b: i64,
    remaining: usize,
    idx: &mut Vec<usize>,
    coef: &mut Vec<i64>,
    sum: Option<&MumfordDivisor>,
    out: &mut BTreeSet<Vec<i64>>,
    budget: &mut Budget,
) -> Result<()> {
    if remaining == 0 {
        let sum = sum.expect("at least one index chosen");
        let target = curve.neg(sum)?;
        let last = *idx.last().unwrap();
        if let Some(hits) = lookup.get(&target.key()) {
            for &(j, a) in hits {
                if j > last {
                    let mut v = vec![0; k];
                    for (&i, &c) in idx.iter().zip(coef.iter()) {
                        v[i] = c;
                    }
                    v[j] = a;
                    out.insert(v);
                }
            }
        }
        return Ok(());
    }
    let start = idx.last().map_or(0, |&i| i + 1);
    // Leave room for the lookup index after this one.
    for i in start..k.saturating_sub(remaining) {
        let range: Vec<i64> = if idx.is_empty() {
            (1..=b).collect()
        } else {
            (-b..=b).filter(|&a| a != 0).collect()
        };
        for a in range {
            let term = mult(i, a)?;
            let next = match sum {
                None => term,
                Some(s) => {
                    budget.spend(1)?;
                    curve.add(s, &term)?
                }
            };
            idx.push(i);
            coef.push(a);
            extend_partial(curve, mult, lookup, k, b, remaining - 1, idx, coef, Some(&next), out, budget)?;
            idx.pop();
            coef.pop();
        }
    }
    Ok(())
}

fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].recip().expect("nonzero pivot");
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = &m[i][c] * &inv;
                for j in c..cols {
                    let delta = &factor * &m[r][j];
                    m[i][j] = &m[i][j] - &delta;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn to_rows(vs: &[Vec<i64>], cols: &[usize]) -> Vec<Vec<Rational>> {
    vs.iter().map(|v| cols.iter().map(|&c| Rational::from(v[c])).collect()).collect()
}

/// Vectors in the search window lying in the rational span of `claimed`.
pub fn expected_survivors(claimed: &[Vec<i64>], k: usize, bound: u32, support: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if claimed.is_empty() {
        return out;
    }
    let all: Vec<usize> = (0..k).collect();
    let full_rank = rank(&to_rows(claimed, &all));
    let b = bound as i64;
    for size in 1..=support.min(k) {
        for subset in combinations(k, size) {
            let outside: Vec<usize> = all.iter().copied().filter(|c| !subset.contains(c)).collect();
            if !outside.is_empty() && rank(&to_rows(claimed, &outside)) == full_rank {
                continue;
            }
            // Some nonzero span member lives on this subset; enumerate the
            // window vectors with exactly this support.
            let mut coeffs = vec![-b; size];
            coeffs[0] = 1;
            loop {
                let mut v = vec![0; k];
                for (&c, &a) in subset.iter().zip(&coeffs) {
                    v[c] = a;
                }
                let mut rows = claimed.to_vec();
                rows.push(v.clone());
                if rank(&to_rows(&rows, &all)) == full_rank {
                    out.push(v);
                }
                if !next_coeffs(&mut coeffs, b) {
                    break;
                }
            }
        }
    }
    out.sort();
    out
}

/// Steps through nonzero coefficient tuples in `[-b, b]` with the first
/// entry in `1..=b`.
fn next_coeffs(c: &mut [i64], b: i64) -> bool {
    for i in (0..c.len()).rev() {
        let lo = if i == 0 { 1 } else { -b };
        let next = if c[i] == -1 { 1 } else { c[i] + 1 };
        if next <= b {
            c[i] = next;
            return true;
        }
        c[i] = lo;
    }
    false
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Relations among the table classes that hold on every curve of the
/// family, as integer vectors over the primary points.
pub fn claimed_relations(curve: &CurveSpec<Rational>, kind: ClassKind) -> Vec<Vec<i64>> {
    let k = curve.primary;
    match (curve.family, kind) {
        (Family::Gamma1 | Family::Baseline, ClassKind::Eps | ClassKind::Base) => vec![vec![1; k]],
        (Family::Theta1, ClassKind::Eps | ClassKind::Base) if curve.d <= 3 => {
            // y - h(u_i) vanishes exactly at the three points over u_i.
            (0..k / 3)
                .map(|i| {
                    let mut v = vec![0; k];
                    v[3 * i..3 * i + 3].fill(1);
                    v
                })
                .collect()
        }
        (Family::Theta1, ClassKind::Eps | ClassKind::Base) => vec![vec![1; k]],
        _ => Vec::new(),
    }
}

/// Odd primes at or above `prime_min` where the curve and every point
/// reduce well, the primary points stay distinct and non-Weierstrass, and
/// (for `R` classes) none of them lands on `(0, 0)`.
pub fn select_primes(
    curve: &CurveSpec<Rational>,
    params: &SieveParams,
    kind: ClassKind,
) -> Result<Vec<(FpCurve, Vec<MumfordDivisor>)>> {
    let mut out = Vec::new();
    let mut p = params.prime_min.max(3);
    let limit = params.prime_min.max(3).saturating_mul(1000).max(1_000_000);
    while out.len() < params.prime_count {
        if p > limit {
            return Err(Error::BadReduction(format!(
                "found only {} good primes below {limit}",
                out.len()
            )));
        }
        if is_prime_u64(p) {
            if let Some(r) = try_prime(curve, p, kind)? {
                out.push(r);
            }
        }
        p += 1;
    }
    Ok(out)
}

fn try_prime(
    curve: &CurveSpec<Rational>,
    p: u64,
    kind: ClassKind,
) -> Result<Option<(FpCurve, Vec<MumfordDivisor>)>> {
    let fc = match reduce_curve(curve, p) {
        Ok(c) => c,
        Err(Error::BadReduction(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut xs = BTreeSet::new();
    let mut classes = Vec::with_capacity(curve.primary);
    for pt in curve.primary_points() {
        let CurvePoint::Affine { x, y } = pt else {
            return Err(Error::pre("table point at infinity"));
        };
        let (xr, yr) = (x.mod_u64(p).unwrap(), y.mod_u64(p).unwrap());
        if yr == 0 || !xs.insert(xr) {
            return Ok(None);
        }
        match reduce_class(pt, &fc, kind) {
            Ok(d) => classes.push(d),
            Err(Error::BadReduction(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some((fc, classes)))
}

/// Full pipeline on a built curve: prime selection, class reduction, sieve.
pub fn sieve_curve(
    curve: &CurveSpec<Rational>,
    params: &SieveParams,
    kind: ClassKind,
) -> Result<RelationReport> {
    if !curve.has_odd_degree() {
        return Err(Error::Unsupported(format!(
            "{} with d = {} has even deg f = {}; only odd-degree models are sieved",
            curve.family.name(),
            curve.d,
            curve.degree()
        )));
    }
    if kind == ClassKind::R && !curve.family.is_twisted() {
        return Err(Error::Unsupported(format!(
            "{} curves carry no (0, 0) point for r classes",
            curve.family.name()
        )));
    }
    let reduced = select_primes(curve, params, kind)?;
    let labels = (1..=curve.primary).map(|i| format!("{}(P{i})", kind.name())).collect();
    let claimed = claimed_relations(curve, kind);
    relation_sieve(&reduced, labels, params.bound, params.support, params.op_budget, &claimed)
}
