use ccurve::config::Config;
use ccurve::format::{
    any_curve_from_json, any_curve_to_json, any_witness_from_json, any_witness_to_json, to_pretty, CheckJson,
    CurveJson, IgusaJson, SieveReportJson, VerifyReportJson, WitnessJson, WitnessReportJson,
};
use ccurve_core::composite::WitnessKind;
use ccurve_core::curve::Family;
use ccurve_core::forge::{forge_seeded, sample_witness_seeded, SampleConfig};
use ccurve_core::invariants::IgusaTuple;
use ccurve_core::Rational;

fn reparse<T: serde::Serialize + serde::de::DeserializeOwned>(x: &T) -> T {
    serde_json::from_str(&to_pretty(x)).unwrap()
}

#[test]
fn curves_round_trip() {
    let cfg = SampleConfig::default();
    let cases = [
        (Family::Gamma1, 4),
        (Family::Gamma2, 3),
        (Family::ThetaTilde, 2),
        (Family::Theta2, 3),
        (Family::Lambda2, 3),
        (Family::LambdaTilde, 3),
        (Family::Baseline, 5),
        (Family::Kummer, 3),
    ];
    for (family, d) in cases {
        let curve = forge_seeded(family, d, 11, &cfg).unwrap().curve;
        let json = any_curve_to_json(&curve);
        let back: CurveJson = reparse(&json);
        assert_eq!(back, json);
        assert_eq!(any_curve_from_json(&back).unwrap(), curve, "{}", family.name());
    }
}

#[test]
fn witnesses_round_trip() {
    let cfg = SampleConfig::default();
    for (kind, size) in [(WitnessKind::B, 3), (WitnessKind::Z, 4), (WitnessKind::Kummer, 5), (WitnessKind::Baseline, 4)] {
        let w = sample_witness_seeded(kind, size, 3, &cfg).unwrap();
        let json: WitnessJson = reparse(&any_witness_to_json(&w));
        assert_eq!(json.family, kind.name());
        assert_eq!(any_witness_from_json(&json).unwrap(), w);
    }
}

#[test]
fn aux_must_match_family() {
    let w = sample_witness_seeded(WitnessKind::Baseline, 4, 3, &SampleConfig::default()).unwrap();
    let mut json = any_witness_to_json(&w);
    json.family = "B".into();
    assert!(any_witness_from_json(&json).unwrap_err().contains("aux"));
}

#[test]
fn bad_coefficient_reports_its_location() {
    let curve = forge_seeded(Family::Gamma1, 4, 1, &SampleConfig::default()).unwrap().curve;
    let mut json = any_curve_to_json(&curve);
    json.points[2][1] = serde_json::json!("1/0");
    let err = any_curve_from_json(&json).unwrap_err();
    assert!(err.starts_with("points[2]: y:"), "{err}");
    let mut json = any_curve_to_json(&curve);
    json.f[0] = "x".into();
    assert!(any_curve_from_json(&json).unwrap_err().starts_with("f: [0]"));
}

#[test]
fn coefficient_strings_are_normalized_fractions() {
    let curve = forge_seeded(Family::Lambda2, 3, 2, &SampleConfig::default()).unwrap().curve;
    let json = any_curve_to_json(&curve);
    for c in &json.f {
        let (n, d) = c.split_once('/').expect("num/den");
        assert!(n.trim_start_matches('-').chars().all(|ch| ch.is_ascii_digit()));
        assert!(d.chars().all(|ch| ch.is_ascii_digit()) && !d.starts_with('0'));
        assert_eq!(c.parse::<Rational>().unwrap().to_string(), *c);
    }
    assert!(json.points.iter().any(|p| p[0] == serde_json::json!("inf")));
}

#[test]
fn reports_and_config_round_trip() {
    let v = VerifyReportJson {
        family: "gamma1".into(),
        d: 4,
        genus: 1,
        points: 17,
        checks: vec![CheckJson { name: "on_curve".into(), pass: false, detail: "index 3".into() }],
        off_curve: vec![3],
        relation_witness: Some(WitnessReportJson {
            pass: true,
            mismatch_coefficient: None,
            bad_points: vec![],
            f_matches: true,
            relation: Some("sum".into()),
        }),
        relation_witness_error: None,
        two_torsion: None,
        rank_note: "note".into(),
        pass: false,
    };
    assert_eq!(reparse(&v), v);
    let s = SieveReportJson {
        family: "lambda2".into(),
        d: 3,
        classes: "r".into(),
        labels: vec!["r0".into(), "r1".into()],
        primes: vec![1009, 1013],
        bound: 10,
        support: 3,
        found: vec![vec![1, -1]],
        claimed: vec![],
        expected: vec![],
        unexpected: vec![vec![1, -1]],
        missing: vec![],
        first_prime_hits: 4,
        group_ops: 100,
        verdict: "FAIL".into(),
        scope: "scope".into(),
    };
    assert_eq!(reparse(&s), s);
    let t = IgusaTuple {
        i2: Rational::from(-272),
        i4: Rational::from(1060),
        i6: Rational::from(-80792),
        i10: Rational::from(-33856),
    };
    let j: IgusaJson = reparse(&IgusaJson::from(&t));
    assert_eq!(j.i2, "-272/1");
    assert_eq!(j.to_tuple().unwrap(), t);
    let c = Config { seed: 9, height: 7, ..Config::default() };
    assert_eq!(reparse(&c), c);
    let partial: Config = serde_json::from_str(r#"{"seed": 5, "sieve": {"bound": 4}}"#).unwrap();
    assert_eq!((partial.seed, partial.sieve.bound, partial.sieve.support), (5, 4, 3));
    assert!(serde_json::from_str::<Config>(r#"{"sead": 5}"#).is_err());
    assert!(Config { height: 0, ..Config::default() }.validate().is_err());
}
