//! Seeded sampling of witnesses and the resample-on-degeneracy driver.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::algebra::{CycloElem, QuadAlg, QuadElem};
use crate::composite::{
    baseline_tuple, kummer_tuple, param_b, param_z, CompositeWitness, WitnessKind,
};
use crate::curve::{build_curve, expected_counts, CurveSpec, Family};
use crate::error::{Degeneracy, Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    /// Bound on numerators and denominators of sampled parameters.
    pub height: u32,
    pub max_retries: u32,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { height: 50, max_retries: 32 }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// `a / b` with `|a| <= h` and `1 <= b <= h`.
pub fn sample_rational<R: Rng + ?Sized>(rng: &mut R, h: u32) -> Rational {
    let h = h.max(1) as i64;
    let num = rng.gen_range(-h..=h);
    let den = rng.gen_range(1..=h);
    Rational::new(BigInt::from(num), BigInt::from(den)).expect("positive denominator")
}

fn sample_vec<R: Rng + ?Sized>(rng: &mut R, h: u32, n: usize) -> Vec<Rational> {
    (0..n).map(|_| sample_rational(rng, h)).collect()
}

/// A witness of either coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyWitness {
    Rational(CompositeWitness<Rational>),
    Cyclotomic(CompositeWitness<CycloElem>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyCurve {
    Rational(CurveSpec<Rational>),
    Cyclotomic(CurveSpec<CycloElem>),
}

impl AnyCurve {
    pub fn family(&self) -> Family {
        match self {
            AnyCurve::Rational(c) => c.family,
            AnyCurve::Cyclotomic(c) => c.family,
        }
    }

    pub fn genus(&self) -> usize {
        match self {
            AnyCurve::Rational(c) => c.genus,
            AnyCurve::Cyclotomic(c) => c.genus,
        }
    }

    pub fn point_count(&self) -> usize {
        match self {
            AnyCurve::Rational(c) => c.points.len(),
            AnyCurve::Cyclotomic(c) => c.points.len(),
        }
    }
}

/// One witness draw. `size` is the block count for `B`/`Z`, `d` for the
/// baseline, and `p` for kummer.
pub fn sample_witness<R: Rng + ?Sized>(
    kind: WitnessKind,
    size: usize,
    height: u32,
    rng: &mut R,
) -> Result<AnyWitness> {
    match kind {
        WitnessKind::B | WitnessKind::Z => {
            let alg = if kind == WitnessKind::B { QuadAlg::Eisenstein } else { QuadAlg::Gaussian };
            let w = QuadElem::new(sample_rational(rng, height), sample_rational(rng, height), alg);
            let s = sample_vec(rng, height, size.saturating_sub(1));
            if w.norm().is_zero() {
                return Err(Error::Degenerate(Degeneracy::ZeroNorm));
            }
            let wit = if kind == WitnessKind::B { param_b(size, &w, &s)? } else { param_z(size, &w, &s)? };
            Ok(AnyWitness::Rational(wit))
        }
        WitnessKind::Kummer => {
            let p = u32::try_from(size).map_err(|_| Error::pre("p out of range"))?;
            let t = sample_vec(rng, height, 6);
            Ok(AnyWitness::Cyclotomic(kummer_tuple(p, &t)?))
        }
        WitnessKind::Baseline => {
            let u = sample_vec(rng, height, 2 * size);
            Ok(AnyWitness::Rational(baseline_tuple(size, &u)?))
        }
    }
}

/// Witness size parameter a family needs for a given `d`.
pub fn witness_size(family: Family, d: usize) -> usize {
    match family.witness_kind() {
        WitnessKind::B | WitnessKind::Z => 2 * d,
        WitnessKind::Kummer | WitnessKind::Baseline => d,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forged {
    pub curve: AnyCurve,
    /// Draws consumed, including the successful one.
    pub attempts: u32,
}

/// Samples witnesses and builds the curve, resampling on degeneracy.
pub fn forge_curve<R: Rng + ?Sized>(
    family: Family,
    d: usize,
    cfg: &SampleConfig,
    rng: &mut R,
) -> Result<Forged> {
    expected_counts(family, d)?;
    let size = witness_size(family, d);
    let mut last = Degeneracy::RepeatedOuterRoot;
    for attempt in 1..=cfg.max_retries.max(1) {
        let built = sample_witness(family.witness_kind(), size, cfg.height, rng).and_then(|w| match w {
            AnyWitness::Rational(w) => build_curve(family, &w).map(AnyCurve::Rational),
            AnyWitness::Cyclotomic(w) => build_curve(family, &w).map(AnyCurve::Cyclotomic),
        });
        match built {
            Ok(curve) => return Ok(Forged { curve, attempts: attempt }),
            Err(Error::Degenerate(kind)) => last = kind,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetriesExhausted { attempts: cfg.max_retries.max(1), last })
}

/// [`forge_curve`] with a ChaCha20 stream seeded from `seed`; the seed is
/// recorded on the witness.
pub fn forge_seeded(family: Family, d: usize, seed: u64, cfg: &SampleConfig) -> Result<Forged> {
    let mut rng = rng_from_seed(seed);
    let mut out = forge_curve(family, d, cfg, &mut rng)?;
    match &mut out.curve {
        AnyCurve::Rational(c) => c.witness.seed = Some(seed),
        AnyCurve::Cyclotomic(c) => c.witness.seed = Some(seed),
    }
    Ok(out)
}

/// Witness-only sampling with the same retry policy.
pub fn sample_witness_seeded(
    kind: WitnessKind,
    size: usize,
    seed: u64,
    cfg: &SampleConfig,
) -> Result<AnyWitness> {
    let mut rng = rng_from_seed(seed);
    let mut last = Degeneracy::RepeatedOuterRoot;
    for _ in 0..cfg.max_retries.max(1) {
        match sample_witness(kind, size, cfg.height, &mut rng) {
            Ok(mut w) => {
                match &mut w {
                    AnyWitness::Rational(x) => x.seed = Some(seed),
                    AnyWitness::Cyclotomic(x) => x.seed = Some(seed),
                }
                return Ok(w);
            }
            Err(Error::Degenerate(k)) => last = k,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetriesExhausted { attempts: cfg.max_retries.max(1), last })
}
