use std::ffi::OsString;
use std::path::{Path, PathBuf};

use ccurve_core::composite::{check_pte, WitnessKind};
use ccurve_core::curve::{relation_witness, two_torsion_witness, verify_points, CurveSpec, Family, RANK_NOTE};
use ccurve_core::field::RationalAlgebra;
use ccurve_core::forge::{forge_seeded, sample_witness_seeded, AnyCurve, AnyWitness};
use ccurve_core::invariants::{homogenize, igusa_clebsch, weighted_equivalent, IgusaTuple};
use ccurve_core::jacobian::{sieve_curve, ClassKind, Verdict, SCOPE_NOTE};
use ccurve_core::Error;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::Value;

use crate::config::Config;
use crate::error::{CliError, EXIT_CHECK_FAILED, EXIT_DEGENERATE, EXIT_OK};
use crate::format::{
    any_curve_from_json, any_curve_to_json, any_witness_to_json, to_pretty, CheckJson, CompareJson, CurveJson,
    IgusaJson, JsonScalar, ManifestEntry, ManifestJson, SieveReportJson, VerifyReportJson, WitnessReportJson,
};
use crate::io::{emit, read_json, write_atomic};

#[derive(Parser, Debug)]
#[command(name = "ccurve", version, about = "Forge and verify many-pointed hyperelliptic curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample a witness and build a curve (several families, d values or seeds form a batch).
    Forge(ForgeArgs),
    /// Re-check a curve file: points, genus, counts, witness identities.
    Verify(VerifyArgs),
    /// Search for small relations among reduced divisor classes.
    Sieve(SieveArgs),
    /// Sample a composite-tuple witness.
    Pte(PteArgs),
    /// Igusa-Clebsch invariants of a genus-2 curve, or a comparison of two.
    Invariants(InvariantsArgs),
}

#[derive(Args, Debug, Default)]
pub struct Common {
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file (a directory for batches); standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for batches.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ForgeArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub family: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub d: Vec<usize>,
    /// Prime for the kummer family (same as --d).
    #[arg(long)]
    pub p: Option<usize>,
    /// Seeds: a list `1,2,3` or ranges `0..10`, `0..=9`.
    #[arg(long, value_delimiter = ',')]
    pub seed: Vec<String>,
    #[arg(long)]
    pub height: Option<u32>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct SieveArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub primes: Option<usize>,
    #[arg(long)]
    pub bound: Option<u32>,
    #[arg(long)]
    pub support: Option<usize>,
    /// base, eps or r; defaults to r for twisted families and eps otherwise.
    #[arg(long)]
    pub classes: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct PteArgs {
    /// B, Z, kummer or baseline.
    #[arg(long)]
    pub family: String,
    /// Block count for B and Z, half the tuple length for baseline.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub height: Option<u32>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct InvariantsArgs {
    /// Curve files, or invariant files written by this command.
    #[arg(num_args = 1..=2, required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long)]
    pub compare: bool,
    #[command(flatten)]
    pub common: Common,
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { crate::error::EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32, CliError> {
    match cmd {
        Command::Forge(a) => forge(a),
        Command::Verify(a) => verify(a),
        Command::Sieve(a) => sieve(a),
        Command::Pte(a) => pte(a),
        Command::Invariants(a) => invariants(a),
    }
}

fn load_config(common: &Common) -> Result<Config, CliError> {
    let mut cfg = match &common.config {
        Some(p) => read_json::<Config>(p)?,
        None => Config::default(),
    };
    if let Some(out) = &common.out {
        cfg.output = Some(out.clone());
    }
    Ok(cfg)
}

fn finish(cfg: &Config) -> Result<Config, CliError> {
    cfg.validate()?;
    Ok(cfg.clone())
}

fn parse_family(s: &str) -> Result<Family, CliError> {
    Family::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        CliError::Usage(format!("unknown family {s:?}; expected one of {}", names.join(", ")))
    })
}

fn parse_seeds(items: &[String]) -> Result<Vec<u64>, CliError> {
    let bad = |s: &str| CliError::Usage(format!("bad seed {s:?}"));
    let mut out = Vec::new();
    for item in items {
        let item = item.trim();
        if let Some((lo, hi)) = item.split_once("..") {
            let lo: u64 = lo.parse().map_err(|_| bad(item))?;
            let (hi, inclusive) = match hi.strip_prefix('=') {
                Some(h) => (h, true),
                None => (hi, false),
            };
            let hi: u64 = hi.parse().map_err(|_| bad(item))?;
            if inclusive {
                out.extend(lo..=hi);
            } else {
                out.extend(lo..hi);
            }
        } else {
            out.push(item.parse().map_err(|_| bad(item))?);
        }
    }
    Ok(out)
}

struct ForgeTask {
    family: Family,
    d: usize,
    seed: u64,
}

impl ForgeTask {
    fn file_name(&self) -> String {
        format!("{}-d{}-seed{}.json", self.family.name(), self.d, self.seed)
    }
}

fn forge(a: ForgeArgs) -> Result<i32, CliError> {
    let mut cfg = load_config(&a.common)?;
    if let Some(h) = a.height {
        cfg.height = h;
    }
    let cfg = finish(&cfg)?;
    let seeds = if a.seed.is_empty() { vec![cfg.seed] } else { parse_seeds(&a.seed)? };
    let mut tasks = Vec::new();
    for name in &a.family {
        let family = parse_family(name)?;
        let ds: Vec<usize> = match (family, a.p) {
            (Family::Kummer, Some(p)) => vec![p],
            _ => a.d.clone(),
        };
        if ds.is_empty() {
            return Err(CliError::Usage(format!("{}: --d is required", family.name())));
        }
        for &d in &ds {
            for &seed in &seeds {
                tasks.push(ForgeTask { family, d, seed });
            }
        }
    }
    let sample = cfg.sample();
    let run_task = |t: &ForgeTask| forge_seeded(t.family, t.d, t.seed, &sample);

    if tasks.len() == 1 {
        let t = &tasks[0];
        let forged = run_task(t)?;
        emit(cfg.output.as_deref(), &to_pretty(&any_curve_to_json(&forged.curve)))?;
        eprintln!(
            "forge {} d={} seed={}: genus {}, {} points, {} attempt(s)",
            t.family.name(),
            t.d,
            t.seed,
            forged.curve.genus(),
            forged.curve.point_count(),
            forged.attempts
        );
        return Ok(EXIT_OK);
    }

    let dir = cfg.output.clone().ok_or_else(|| CliError::Usage("a batch needs --out <directory>".into()))?;
    std::fs::create_dir_all(&dir).map_err(|e| CliError::Io { path: dir.display().to_string(), msg: e.to_string() })?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.common.jobs.unwrap_or(1).max(1))
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let entries: Vec<ManifestEntry> = pool.install(|| {
        tasks
            .par_iter()
            .map(|t| {
                let mut entry = ManifestEntry {
                    family: t.family.name().to_string(),
                    d: t.d,
                    seed: t.seed,
                    file: None,
                    exit_code: EXIT_OK,
                    genus: None,
                    points: None,
                    attempts: None,
                    error: None,
                };
                let written = run_task(t).map_err(CliError::from).and_then(|forged| {
                    let name = t.file_name();
                    write_atomic(&dir.join(&name), &to_pretty(&any_curve_to_json(&forged.curve)))?;
                    Ok((name, forged))
                });
                match written {
                    Ok((name, forged)) => {
                        entry.file = Some(name);
                        entry.genus = Some(forged.curve.genus());
                        entry.points = Some(forged.curve.point_count());
                        entry.attempts = Some(forged.attempts);
                    }
                    Err(e) => {
                        entry.exit_code = e.exit_code();
                        entry.error = Some(e.to_string());
                    }
                }
                entry
            })
            .collect()
    });
    let manifest = ManifestJson { command: "forge".into(), entries };
    write_atomic(&dir.join("manifest.json"), &to_pretty(&manifest))?;
    let failed = manifest.entries.iter().filter(|e| e.exit_code != EXIT_OK).count();
    eprintln!(
        "forge batch: {} curves written, {failed} failed, manifest {}",
        manifest.entries.len() - failed,
        dir.join("manifest.json").display()
    );
    Ok(manifest.entries.iter().map(|e| e.exit_code).max().unwrap_or(EXIT_OK))
}

fn read_curve(path: &Path) -> Result<AnyCurve, CliError> {
    let json: CurveJson = read_json(path)?;
    any_curve_from_json(&json).map_err(|msg| CliError::Format { path: path.display().to_string(), msg })
}

fn verify_report<F: RationalAlgebra + JsonScalar>(c: &CurveSpec<F>) -> (VerifyReportJson, i32) {
    let v = verify_points(c);
    let (witness, witness_error) = match relation_witness(c) {
        Ok(r) => (
            Some(WitnessReportJson {
                pass: r.pass,
                mismatch_coefficient: r.mismatch_coefficient,
                bad_points: r.bad_points,
                f_matches: r.f_matches,
                relation: r.relation,
            }),
            None,
        ),
        Err(e) => (None, Some(e.to_string())),
    };
    let two_torsion = (c.family.is_twisted() && c.has_odd_degree()).then(|| two_torsion_witness(c).unwrap_or(false));
    let pass = v.all_pass() && witness.as_ref().is_some_and(|w| w.pass) && two_torsion != Some(false);
    let degenerate = v.check("squarefree").is_some_and(|ch| !ch.pass);
    let code = if pass {
        EXIT_OK
    } else if degenerate {
        EXIT_DEGENERATE
    } else {
        EXIT_CHECK_FAILED
    };
    let report = VerifyReportJson {
        family: c.family.name().to_string(),
        d: c.d,
        genus: c.genus,
        points: c.points.len(),
        checks: v
            .checks
            .iter()
            .map(|ch| CheckJson { name: ch.name.to_string(), pass: ch.pass, detail: ch.detail.clone() })
            .collect(),
        off_curve: v.on_curve.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i).collect(),
        relation_witness: witness,
        relation_witness_error: witness_error,
        two_torsion,
        rank_note: RANK_NOTE.to_string(),
        pass,
    };
    (report, code)
}

fn verify(a: VerifyArgs) -> Result<i32, CliError> {
    let cfg = finish(&load_config(&a.common)?)?;
    let curve = read_curve(&a.input)?;
    let (report, code) = match &curve {
        AnyCurve::Rational(c) => verify_report(c),
        AnyCurve::Cyclotomic(c) => verify_report(c),
    };
    emit(cfg.output.as_deref(), &to_pretty(&report))?;
    let failing: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    eprintln!(
        "verify {} d={}: {} ({} points, genus {}){}",
        report.family,
        report.d,
        if report.pass { "PASS" } else { "FAIL" },
        report.points,
        report.genus,
        if failing.is_empty() { String::new() } else { format!(", failing: {}", failing.join(", ")) }
    );
    Ok(code)
}

fn sieve(a: SieveArgs) -> Result<i32, CliError> {
    let mut cfg = load_config(&a.common)?;
    if let Some(p) = a.primes {
        cfg.sieve.prime_count = p;
    }
    if let Some(b) = a.bound {
        cfg.sieve.bound = b;
    }
    if let Some(s) = a.support {
        cfg.sieve.support = s;
    }
    let cfg = finish(&cfg)?;
    let AnyCurve::Rational(curve) = read_curve(&a.input)? else {
        return Err(Error::Unsupported("the sieve needs a curve over the rationals".into()).into());
    };
    let kind = match &a.classes {
        Some(s) => ClassKind::from_name(s).ok_or_else(|| CliError::Usage(format!("unknown class kind {s:?}; expected base, eps or r")))?,
        None if curve.family.is_twisted() => ClassKind::R,
        None => ClassKind::Eps,
    };
    let r = sieve_curve(&curve, &cfg.sieve_params(), kind)?;
    let verdict = match r.verdict {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
    };
    let report = SieveReportJson {
        family: curve.family.name().to_string(),
        d: curve.d,
        classes: kind.name().to_string(),
        labels: r.labels,
        primes: r.primes,
        bound: r.bound,
        support: r.support,
        found: r.found,
        claimed: r.claimed,
        expected: r.expected,
        unexpected: r.unexpected,
        missing: r.missing,
        first_prime_hits: r.first_prime_hits,
        group_ops: r.group_ops,
        verdict: verdict.to_string(),
        scope: SCOPE_NOTE.to_string(),
    };
    emit(cfg.output.as_deref(), &to_pretty(&report))?;
    eprintln!(
        "sieve {} d={} classes={} primes={:?} B={} s={}: {verdict}, {} survivors ({} unexpected, {} missing)",
        report.family,
        report.d,
        report.classes,
        report.primes,
        report.bound,
        report.support,
        report.found.len(),
        report.unexpected.len(),
        report.missing.len()
    );
    Ok(if r.verdict == Verdict::Pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn pte(a: PteArgs) -> Result<i32, CliError> {
    let mut cfg = load_config(&a.common)?;
    if let Some(h) = a.height {
        cfg.height = h;
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    let cfg = finish(&cfg)?;
    let kind = WitnessKind::from_name(&a.family)
        .ok_or_else(|| CliError::Usage(format!("unknown witness family {:?}; expected B, Z, kummer or baseline", a.family)))?;
    let size = match kind {
        WitnessKind::Kummer => a.p.or(a.d),
        _ => a.d,
    }
    .ok_or_else(|| CliError::Usage("pte needs --d (or --p for kummer)".into()))?;
    let w = sample_witness_seeded(kind, size, cfg.seed, &cfg.sample())?;
    let (identity, pte_ok) = match &w {
        AnyWitness::Rational(w) => (w.verify_identity()?, check_pte(&w.blocks())?),
        AnyWitness::Cyclotomic(w) => (w.verify_identity()?, check_pte(&w.blocks())?),
    };
    emit(cfg.output.as_deref(), &to_pretty(&any_witness_to_json(&w)))?;
    let pass = identity && pte_ok;
    eprintln!(
        "pte {} size={size} seed={}: identity {}, equal power sums {}",
        kind.name(),
        cfg.seed,
        if identity { "ok" } else { "FAILED" },
        if pte_ok { "ok" } else { "FAILED" }
    );
    Ok(if pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn curve_invariants(path: &Path) -> Result<IgusaTuple, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    let format_err = |msg: String| CliError::Format { path: path.display().to_string(), msg };
    let value: Value = serde_json::from_str(&text).map_err(|e| format_err(e.to_string()))?;
    if value.get("I2").is_some() {
        let t: IgusaJson = serde_json::from_value(value).map_err(|e| format_err(e.to_string()))?;
        return t.to_tuple().map_err(format_err);
    }
    let json: CurveJson = serde_json::from_value(value).map_err(|e| format_err(e.to_string()))?;
    let curve = any_curve_from_json(&json).map_err(format_err)?;
    let f = match &curve {
        AnyCurve::Rational(c) => &c.f,
        AnyCurve::Cyclotomic(c) => &c.f,
    };
    if !matches!(f.degree(), Some(5 | 6)) {
        return Err(Error::Unsupported(format!("invariants need a genus-2 curve, got genus {}", curve.genus())).into());
    }
    Ok(igusa_clebsch(&homogenize(f, 6)?)?)
}

/// The tuple when short, otherwise the numerator digit counts.
fn brief(t: &IgusaTuple) -> String {
    let show = |q: &ccurve_core::Rational| {
        let s = q.to_string();
        if s.len() <= 24 {
            s
        } else {
            format!("<{} digits>", q.numer().to_string().trim_start_matches('-').len())
        }
    };
    format!("({}, {}, {}, {})", show(&t.i2), show(&t.i4), show(&t.i6), show(&t.i10))
}

fn invariants(a: InvariantsArgs) -> Result<i32, CliError> {
    let cfg = finish(&load_config(&a.common)?)?;
    match (a.compare, a.inputs.as_slice()) {
        (false, [one]) => {
            let t = curve_invariants(one)?;
            emit(cfg.output.as_deref(), &to_pretty(&IgusaJson::from(&t)))?;
            eprintln!("invariants {}: {}", one.display(), brief(&t));
            Ok(EXIT_OK)
        }
        (true, [x, y]) => {
            let (tx, ty) = (curve_invariants(x)?, curve_invariants(y)?);
            let equivalent = weighted_equivalent(&tx, &ty)?;
            let out = CompareJson { a: IgusaJson::from(&tx), b: IgusaJson::from(&ty), equivalent };
            emit(cfg.output.as_deref(), &to_pretty(&out))?;
            eprintln!(
                "invariants --compare: {}",
                if equivalent { "weighted-equivalent" } else { "not weighted-equivalent" }
            );
            Ok(EXIT_OK)
        }
        (true, _) => Err(CliError::Usage("--compare needs exactly two inputs".into())),
        (false, _) => Err(CliError::Usage("give one input, or two with --compare".into())),
    }
}
