use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ccurve::format::{any_curve_from_json, any_witness_from_json, CurveJson, IgusaJson, WitnessJson};
use ccurve_core::forge::{AnyCurve, AnyWitness};
use ccurve_core::invariants::{homogenize, igusa_clebsch};
use serde_json::Value;

fn ccurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccurve")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_value(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn forge(dir: &Path, name: &str, family: &str, d: &str, seed: &str) -> PathBuf {
    let out = path(dir, name);
    let r = ccurve(&["forge", "--family", family, "--d", d, "--seed", seed, "--out", s(&out)]);
    assert_eq!(code(&r), 0, "{}", stderr(&r));
    out
}

#[test]
fn forge_theta_tilde_example() {
    let dir = tempfile::tempdir().unwrap();
    let file = forge(dir.path(), "c.json", "theta-tilde", "4", "42");
    let v = read_value(&file);
    assert_eq!(v["family"], "theta-tilde");
    assert_eq!(v["genus"], 8);
    assert_eq!(v["points"].as_array().unwrap().len(), 96);
    assert_eq!(v["expected"]["N"], 96);
    assert_eq!(v["witness"]["seed"], 42);
    assert_eq!(v["witness"]["family"], "B");
    // Only the JSON file on the output path; stdout stays empty.
    let r = ccurve(&["forge", "--family", "theta-tilde", "--d", "4", "--seed", "42", "--out", s(&file)]);
    assert!(r.stdout.is_empty());
    assert!(stderr(&r).contains("genus 8"));
}

#[test]
fn forge_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = forge(dir.path(), "a.json", "lambda2", "4", "7");
    let b = forge(dir.path(), "b.json", "lambda2", "4", "7");
    let c = forge(dir.path(), "c.json", "lambda2", "4", "8");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());
    let stdout = ccurve(&["forge", "--family", "lambda2", "--d", "4", "--seed", "7"]);
    assert_eq!(stdout.stdout, std::fs::read(&a).unwrap());
}

#[test]
fn forge_unsupported_genus_zero() {
    let r = ccurve(&["forge", "--family", "gamma1", "--d", "2"]);
    assert_eq!(code(&r), 2);
    assert!(stderr(&r).contains("unsupported"));
    assert!(r.stdout.is_empty());
}

#[test]
fn forge_retry_exhaustion_exits_2() {
    // Height 1 leaves only {-1, 0, 1}: every draw is degenerate.
    let dir = tempfile::tempdir().unwrap();
    let cfg = path(dir.path(), "cfg.json");
    std::fs::write(&cfg, r#"{"height": 1, "max_retries": 3}"#).unwrap();
    let r = ccurve(&["forge", "--family", "theta1", "--d", "6", "--config", s(&cfg)]);
    assert_eq!(code(&r), 2, "{}", stderr(&r));
    assert!(stderr(&r).contains("gave up after 3"), "{}", stderr(&r));
}

#[test]
fn batch_manifest_is_deterministic_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let one = path(dir.path(), "one");
    let four = path(dir.path(), "four");
    for (out, jobs) in [(&one, "1"), (&four, "4")] {
        let r = ccurve(&[
            "forge", "--family", "gamma1,theta1,lambda2", "--d", "4,5", "--seed", "0..=1", "--jobs", jobs, "--out", s(out),
        ]);
        assert_eq!(code(&r), 0, "{}", stderr(&r));
    }
    let manifest = read_value(&one.join("manifest.json"));
    let entries = manifest["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 12);
    assert_eq!(entries[0]["file"], "gamma1-d4-seed0.json");
    assert_eq!(entries[11]["file"], "lambda2-d5-seed1.json");
    for entry in entries {
        let name = entry["file"].as_str().unwrap();
        assert_eq!(std::fs::read(one.join(name)).unwrap(), std::fs::read(four.join(name)).unwrap());
    }
    assert_eq!(std::fs::read(one.join("manifest.json")).unwrap(), std::fs::read(four.join("manifest.json")).unwrap());
    let r = ccurve(&["forge", "--family", "gamma1", "--d", "4", "--seed", "1,2"]);
    assert_eq!(code(&r), 3, "a batch needs an output directory");
}

#[test]
fn batch_records_failures() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "b");
    let r = ccurve(&["forge", "--family", "gamma1", "--d", "3,4", "--out", s(&out)]);
    assert_eq!(code(&r), 2);
    let manifest = read_value(&out.join("manifest.json"));
    assert_eq!(manifest["entries"][0]["exit_code"], 2);
    assert!(manifest["entries"][0]["file"].is_null());
    assert_eq!(manifest["entries"][1]["exit_code"], 0);
}

#[test]
fn verify_forge_output_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    for (family, d) in [("gamma1", "5"), ("theta2", "3"), ("kummer", "3"), ("lambda-tilde", "3")] {
        let file = forge(dir.path(), &format!("{family}.json"), family, d, "3");
        let report = path(dir.path(), "report.json");
        let r = ccurve(&["verify", s(&file), "--out", s(&report)]);
        assert_eq!(code(&r), 0, "{family}: {}", stderr(&r));
        let v = read_value(&report);
        assert_eq!(v["pass"], true);
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    }
    let file = forge(dir.path(), "g.json", "gamma1", "4", "9");
    let mut v = read_value(&file);
    v["points"][3][1] = Value::String("12345/1".into());
    let bad = path(dir.path(), "bad.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    let report = path(dir.path(), "bad-report.json");
    let r = ccurve(&["verify", s(&bad), "--out", s(&report)]);
    assert_eq!(code(&r), 1);
    let rep = read_value(&report);
    assert_eq!(rep["off_curve"], serde_json::json!([3]));
    assert_eq!(rep["relation_witness"]["bad_points"], serde_json::json!([3]));
    assert!(stderr(&r).contains("on_curve"));
}

#[test]
fn verify_reports_degenerate_f() {
    let dir = tempfile::tempdir().unwrap();
    let file = forge(dir.path(), "g.json", "gamma1", "4", "9");
    let mut v = read_value(&file);
    // f = (x - 1)^2 (x + 1): not squarefree.
    v["f"] = serde_json::json!(["1/1", "-1/1", "-1/1", "1/1"]);
    std::fs::write(&file, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(code(&ccurve(&["verify", s(&file)])), 2);
}

#[test]
fn malformed_input_exits_3_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.json");
    std::fs::write(&bad, "{\n  \"family\": \"gamma1\",\n  \"d\": oops\n}").unwrap();
    let r = ccurve(&["verify", s(&bad)]);
    assert_eq!(code(&r), 3);
    assert!(stderr(&r).contains("line 3"), "{}", stderr(&r));
    let r = ccurve(&["verify", s(&path(dir.path(), "missing.json"))]);
    assert_eq!(code(&r), 3);
    assert_eq!(code(&ccurve(&["forge", "--family", "nope", "--d", "3"])), 3);
    assert_eq!(code(&ccurve(&["frobnicate"])), 3);
    assert_eq!(code(&ccurve(&["--help"])), 0);
}

#[test]
fn sieve_lambda2_defaults_pass() {
    let dir = tempfile::tempdir().unwrap();
    let file = forge(dir.path(), "l.json", "lambda2", "3", "1");
    let report = path(dir.path(), "sieve.json");
    let r = ccurve(&["sieve", s(&file), "--out", s(&report)]);
    assert_eq!(code(&r), 0, "{}", stderr(&r));
    let v = read_value(&report);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["classes"], "r");
    assert_eq!(v["labels"].as_array().unwrap().len(), 12);
    assert_eq!(v["primes"].as_array().unwrap().len(), 5);
    assert_eq!((v["bound"].as_u64(), v["support"].as_u64()), (Some(10), Some(3)));
    assert!(v["found"].as_array().unwrap().is_empty());
    assert!(v["scope"].as_str().unwrap().contains("certifies only"));
}

#[test]
fn sieve_flags_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let file = forge(dir.path(), "g.json", "gamma1", "4", "2");
    let report = path(dir.path(), "s.json");
    let r = ccurve(&["sieve", s(&file), "--classes", "base", "--bound", "1", "--support", "8", "--primes", "3", "--out", s(&report)]);
    assert_eq!(code(&r), 0, "{}", stderr(&r));
    let v = read_value(&report);
    assert_eq!(v["found"], serde_json::json!([[1, 1, 1, 1, 1, 1, 1, 1]]));
    assert_eq!(v["primes"].as_array().unwrap().len(), 3);
    assert_eq!(code(&ccurve(&["sieve", s(&file), "--classes", "r"])), 2);
    assert_eq!(code(&ccurve(&["sieve", s(&file), "--classes", "zeta"])), 3);
    assert_eq!(code(&ccurve(&["sieve", s(&file), "--support", "0"])), 3);
    let k = forge(dir.path(), "k.json", "kummer", "3", "2");
    assert_eq!(code(&ccurve(&["sieve", s(&k)])), 2);
    let even = forge(dir.path(), "t.json", "theta2", "4", "2");
    assert_eq!(code(&ccurve(&["sieve", s(&even)])), 2);
}

#[test]
fn pte_emits_valid_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    for args in [["B", "--d", "3"], ["Z", "--d", "4"], ["kummer", "--p", "5"], ["baseline", "--d", "4"]] {
        let out = path(dir.path(), "w.json");
        let r = ccurve(&["pte", "--family", args[0], args[1], args[2], "--seed", "4", "--out", s(&out)]);
        assert_eq!(code(&r), 0, "{}", stderr(&r));
        let json: WitnessJson = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(json.family, args[0]);
        assert_eq!(json.seed, Some(4));
        let ok = match any_witness_from_json(&json).unwrap() {
            AnyWitness::Rational(w) => w.verify_identity().unwrap(),
            AnyWitness::Cyclotomic(w) => w.verify_identity().unwrap(),
        };
        assert!(ok);
    }
    assert_eq!(code(&ccurve(&["pte", "--family", "Q", "--d", "3"])), 3);
    assert_eq!(code(&ccurve(&["pte", "--family", "kummer", "--p", "4"])), 2);
}

#[test]
fn invariants_of_genus_two_curves() {
    let dir = tempfile::tempdir().unwrap();
    let a = forge(dir.path(), "a.json", "theta-tilde", "2", "1");
    let b = forge(dir.path(), "b.json", "lambda2", "3", "1");
    let out = path(dir.path(), "ia.json");
    let r = ccurve(&["invariants", s(&a), "--out", s(&out)]);
    assert_eq!(code(&r), 0, "{}", stderr(&r));
    let got: IgusaJson = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let json: CurveJson = serde_json::from_str(&std::fs::read_to_string(&a).unwrap()).unwrap();
    let AnyCurve::Rational(curve) = any_curve_from_json(&json).unwrap() else { panic!() };
    let want = igusa_clebsch(&homogenize(&curve.f, 6).unwrap()).unwrap();
    assert_eq!(got.to_tuple().unwrap(), want);

    let cmp = path(dir.path(), "cmp.json");
    assert_eq!(code(&ccurve(&["invariants", "--compare", s(&a), s(&out), "--out", s(&cmp)])), 0);
    assert_eq!(read_value(&cmp)["equivalent"], true);
    assert_eq!(code(&ccurve(&["invariants", "--compare", s(&a), s(&b), "--out", s(&cmp)])), 0);
    assert_eq!(read_value(&cmp)["equivalent"], false);

    let g3 = forge(dir.path(), "g3.json", "theta2", "3", "1");
    assert_eq!(code(&ccurve(&["invariants", s(&g3)])), 2);
    assert_eq!(code(&ccurve(&["invariants", "--compare", s(&a)])), 3);
}

#[test]
fn published_sextics_compare_as_inequivalent() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, t: [&str; 4]| {
        let p = path(dir.path(), name);
        let v = serde_json::json!({ "I2": t[0], "I4": t[1], "I6": t[2], "I10": t[3] });
        std::fs::write(&p, v.to_string()).unwrap();
        p
    };
    let p1 = write("p1.json", ["-272", "1060", "-80792", "-33856"]);
    let p2 = write("p2.json", ["-512", "5296", "-799232", "-1280000"]);
    let out = path(dir.path(), "cmp.json");
    assert_eq!(code(&ccurve(&["invariants", "--compare", s(&p1), s(&p2), "--out", s(&out)])), 0);
    assert_eq!(read_value(&out)["equivalent"], false);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = path(dir.path(), "cfg.json");
    std::fs::write(&cfg, r#"{"seed": 42, "height": 50}"#).unwrap();
    let from_cfg = path(dir.path(), "a.json");
    let r = ccurve(&["forge", "--family", "theta1", "--d", "3", "--config", s(&cfg), "--out", s(&from_cfg)]);
    assert_eq!(code(&r), 0, "{}", stderr(&r));
    let from_flag = forge(dir.path(), "b.json", "theta1", "3", "42");
    assert_eq!(std::fs::read(&from_cfg).unwrap(), std::fs::read(&from_flag).unwrap());
    // The --seed flag wins over the file.
    let over = path(dir.path(), "c.json");
    ccurve(&["forge", "--family", "theta1", "--d", "3", "--config", s(&cfg), "--seed", "43", "--out", s(&over)]);
    assert_eq!(read_value(&over)["witness"]["seed"], 43);
    // Output path from the config file.
    let target = path(dir.path(), "from-config.json");
    std::fs::write(&cfg, serde_json::json!({ "seed": 1, "output": target }).to_string()).unwrap();
    assert_eq!(code(&ccurve(&["forge", "--family", "theta1", "--d", "3", "--config", s(&cfg)])), 0);
    assert!(target.exists());

    std::fs::write(&cfg, r#"{"height": 0}"#).unwrap();
    assert_eq!(code(&ccurve(&["forge", "--family", "theta1", "--d", "3", "--config", s(&cfg)])), 3);
    std::fs::write(&cfg, r#"{"hieght": 5}"#).unwrap();
    let r = ccurve(&["forge", "--family", "theta1", "--d", "3", "--config", s(&cfg)]);
    assert_eq!(code(&r), 3);
    assert!(stderr(&r).contains("hieght"));
}
