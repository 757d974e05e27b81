mod common;

use common::table_row;
use ccurve_core::curve::{
    build_curve, expected_counts, relation_witness, two_torsion_witness, verify_points, CurvePoint,
    CurveSpec, Expected, Family,
};
use ccurve_core::forge::{forge_seeded, AnyCurve, SampleConfig};
use ccurve_core::{Error, Poly, Rational};

fn forge(family: Family, d: usize, seed: u64) -> AnyCurve {
    forge_seeded(family, d, seed, &SampleConfig::default())
        .unwrap_or_else(|e| panic!("{} d={d} seed={seed}: {e}", family.name()))
        .curve
}

fn rational(family: Family, d: usize, seed: u64) -> CurveSpec<Rational> {
    match forge(family, d, seed) {
        AnyCurve::Rational(c) => c,
        AnyCurve::Cyclotomic(_) => unreachable!(),
    }
}

#[test]
fn expected_counts_match_tables() {
    for family in Family::ALL {
        for d in 2..=14 {
            match (table_row(family, d), expected_counts(family, d)) {
                (Some((g, n, r)), Ok(e)) => {
                    assert_eq!((e.genus, e.points), (g, n), "{} d={d}", family.name());
                    if family != Family::LambdaTilde {
                        assert_eq!(e.rank, r, "{} d={d}", family.name());
                    }
                }
                (None, Err(Error::Unsupported(_))) => {}
                (None, Ok(_)) if family == Family::Kummer => {}
                (row, got) => panic!("{} d={d}: table {row:?}, got {got:?}", family.name()),
            }
        }
    }
}

#[test]
fn expected_counts_examples() {
    assert_eq!(expected_counts(Family::Theta2, 3).unwrap(), Expected { genus: 3, points: 38, rank: 18 });
    for g0 in 1..5 {
        let e = expected_counts(Family::ThetaTilde, 2 * g0 + 2).unwrap();
        let g = 6 * g0 + 2;
        assert_eq!(e, Expected { genus: g, points: 8 * g + 32, rank: 4 * g + 15 });
        let e = expected_counts(Family::Gamma1, 2 * g0 + 3).unwrap();
        assert_eq!(e, Expected { genus: g0, points: 8 * g0 + 12, rank: 4 * g0 + 5 });
    }
    assert_eq!(expected_counts(Family::Kummer, 5).unwrap().points, 60);
    assert!(expected_counts(Family::Kummer, 9).is_err());
    assert!(expected_counts(Family::Gamma1, 3).is_err());
}

#[test]
fn unsupported_genus_zero_requests() {
    for (family, d) in [(Family::Gamma1, 2), (Family::Gamma1, 3), (Family::Gamma2, 2), (Family::Lambda1, 2)] {
        let err = forge_seeded(family, d, 1, &SampleConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)), "{err:?}");
    }
}

#[test]
fn build_examples() {
    let c = forge(Family::ThetaTilde, 2, 7);
    assert_eq!((c.genus(), c.point_count()), (2, 48));
    let c = forge(Family::Gamma2, 3, 7);
    assert_eq!((c.genus(), c.point_count()), (1, 14));
    let c = forge(Family::Kummer, 3, 7);
    assert_eq!((c.genus(), c.point_count()), (2, 36));
    let c = rational(Family::ThetaTilde, 4, 42);
    assert_eq!((c.genus, c.points.len()), (8, 96));
    assert!(verify_points(&c).all_pass());
    let c = rational(Family::LambdaTilde, 3, 42);
    assert_eq!(c.points.len(), 48);
}

#[test]
fn build_rejects_wrong_witness() {
    let theta = rational(Family::Theta1, 3, 3);
    assert!(matches!(build_curve(Family::Lambda1, &theta.witness), Err(Error::Precondition(_))));
}

#[test]
fn tampered_point_fails_on_curve() {
    let mut c = rational(Family::Gamma1, 4, 9);
    let idx = 3;
    if let CurvePoint::Affine { y, .. } = &mut c.points[idx] {
        *y = &*y + &Rational::one();
    }
    let report = verify_points(&c);
    assert!(!report.all_pass());
    assert!(!report.check("on_curve").unwrap().pass);
    assert_eq!(report.on_curve.iter().filter(|ok| !**ok).count(), 1);
    assert!(!report.on_curve[idx]);
}

#[test]
fn duplicated_point_fails_distinctness() {
    let mut c = rational(Family::Theta1, 3, 2);
    let p = c.points[0].clone();
    c.points[1] = p;
    let report = verify_points(&c);
    assert!(!report.check("distinct").unwrap().pass);
}

#[test]
fn tampered_h_reports_coefficient() {
    let mut c = rational(Family::Gamma1, 4, 5);
    let k = 1;
    let bump = Poly::monomial(Rational::one(), k);
    c.h = &c.h + &bump;
    let report = relation_witness(&c).unwrap();
    assert!(!report.pass);
    // h(0) != 0, so 2 * h * x^k first differs at x^k.
    assert!(!c.h.coeff(0).is_zero());
    assert_eq!(report.mismatch_coefficient, Some(k));
}

#[test]
fn two_torsion_examples() {
    for d in [3, 5] {
        assert!(two_torsion_witness(&rational(Family::Theta2, d, 1)).unwrap());
    }
    for d in 2..=5 {
        let c = rational(Family::Lambda2, d, 1);
        assert!(c.has_odd_degree());
        assert!(two_torsion_witness(&c).unwrap());
    }
    assert!(two_torsion_witness(&rational(Family::Gamma1, 4, 1)).is_err());
    // Even-degree model.
    assert!(two_torsion_witness(&rational(Family::Theta2, 4, 1)).is_err());
}

macro_rules! genus_sweep {
    ($name:ident, $family:expr, $max:expr) => {
        #[test]
        fn $name() {
            let family = $family;
            for d in family.min_d()..=$max {
                if family == Family::Kummer && !ccurve_core::algebra::is_prime_u32(d as u32) {
                    continue;
                }
                let c = forge(family, d, 1000 + d as u64);
                let (g, n) = match &c {
                    AnyCurve::Rational(c) => {
                        let r = verify_points(c);
                        assert!(r.all_pass(), "{} d={d}: {:?}", family.name(), r.checks);
                        (c.genus, c.points.len())
                    }
                    AnyCurve::Cyclotomic(c) => {
                        let r = verify_points(c);
                        assert!(r.all_pass(), "{} d={d}: {:?}", family.name(), r.checks);
                        (c.genus, c.points.len())
                    }
                };
                if let Some((tg, tn, _)) = table_row(family, d) {
                    assert_eq!(g, tg, "{} d={d}", family.name());
                    assert_eq!(n, tn, "{} d={d}", family.name());
                }
            }
        }
    };
}

genus_sweep!(genus_gamma1, Family::Gamma1, 12);
genus_sweep!(genus_gamma2, Family::Gamma2, 12);
genus_sweep!(genus_gamma_tilde, Family::GammaTilde, 12);
genus_sweep!(genus_theta1, Family::Theta1, 12);
genus_sweep!(genus_theta2, Family::Theta2, 12);
genus_sweep!(genus_theta_tilde, Family::ThetaTilde, 12);
genus_sweep!(genus_lambda1, Family::Lambda1, 12);
genus_sweep!(genus_lambda2, Family::Lambda2, 12);
genus_sweep!(genus_lambda_tilde, Family::LambdaTilde, 12);
genus_sweep!(genus_baseline, Family::Baseline, 12);
genus_sweep!(genus_kummer, Family::Kummer, 7);

macro_rules! witness_sweep {
    ($name:ident, $family:expr, $ds:expr) => {
        #[test]
        fn $name() {
            let family = $family;
            for d in $ds {
                for seed in 0..20u64 {
                    let report = match forge(family, d, seed) {
                        AnyCurve::Rational(c) => relation_witness(&c).unwrap(),
                        AnyCurve::Cyclotomic(c) => relation_witness(&c).unwrap(),
                    };
                    assert!(report.pass, "{} d={d} seed={seed}: {report:?}", family.name());
                    assert!(report.relation.is_some());
                }
            }
        }
    };
}

witness_sweep!(witness_gamma1, Family::Gamma1, [4, 5, 6]);
witness_sweep!(witness_theta1, Family::Theta1, [3, 4, 5, 6]);
witness_sweep!(witness_theta_tilde, Family::ThetaTilde, [3, 4, 5, 6]);
witness_sweep!(witness_lambda1, Family::Lambda1, [3, 4, 5, 6]);
witness_sweep!(witness_lambda_tilde, Family::LambdaTilde, [3, 4, 5, 6]);
witness_sweep!(witness_baseline, Family::Baseline, [4, 5, 6]);
witness_sweep!(witness_kummer, Family::Kummer, [3, 5]);

#[test]
fn twisted_witness_certifies_points() {
    for family in [Family::Gamma2, Family::Theta2, Family::Lambda2] {
        let c = rational(family, 3, 4);
        let report = relation_witness(&c).unwrap();
        assert!(report.pass && report.relation.is_none(), "{}: {report:?}", family.name());
    }
}

#[test]
fn forging_is_deterministic() {
    for family in [Family::Theta1, Family::Lambda2, Family::Kummer] {
        assert_eq!(forge(family, 3, 77), forge(family, 3, 77));
    }
    assert_ne!(forge(Family::Theta1, 3, 77), forge(Family::Theta1, 3, 78));
}
