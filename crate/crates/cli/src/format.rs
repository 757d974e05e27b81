//! JSON shapes for witnesses, curves and reports, and their conversions to
//! the core types. Rationals are `"num/den"` strings; polynomials are arrays
//! of coefficient strings indexed by degree.

use ccurve_core::algebra::CycloElem;
use ccurve_core::composite::{Aux, CompositeWitness, WitnessKind};
use ccurve_core::curve::{Branch, CurvePoint, CurveSpec, Expected, Family, RANK_NOTE};
use ccurve_core::field::Field;
use ccurve_core::forge::{AnyCurve, AnyWitness};
use ccurve_core::invariants::IgusaTuple;
use ccurve_core::{Poly, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Decoding failure with a path into the document.
pub type DecodeResult<T> = Result<T, String>;

fn at<T>(path: &str, r: DecodeResult<T>) -> DecodeResult<T> {
    r.map_err(|e| format!("{path}: {e}"))
}

pub fn rational_from_str(s: &str) -> DecodeResult<Rational> {
    s.parse::<Rational>().map_err(|e| format!("bad rational {s:?}: {e}"))
}

/// Coefficient fields that can appear as point coordinates and witness roots.
pub trait JsonScalar: Field {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> DecodeResult<Self>;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> DecodeResult<Self> {
        v.as_str().ok_or_else(|| format!("expected a rational string, found {v}")).and_then(rational_from_str)
    }
}

impl JsonScalar for CycloElem {
    fn to_json(&self) -> Value {
        json!({ "p": self.p(), "rep": poly_to_json(self.rep()) })
    }

    fn from_json(v: &Value) -> DecodeResult<Self> {
        let p = v.get("p").and_then(Value::as_u64).ok_or("expected {\"p\": prime, \"rep\": [...]}")?;
        let rep = v.get("rep").and_then(Value::as_array).ok_or("missing \"rep\" array")?;
        let coeffs = rep
            .iter()
            .enumerate()
            .map(|(i, c)| at(&format!("rep[{i}]"), Rational::from_json(c)))
            .collect::<DecodeResult<Vec<_>>>()?;
        let p = u32::try_from(p).map_err(|_| format!("p = {p} out of range"))?;
        CycloElem::new(p, Poly::new(&(), coeffs)).map_err(|e| e.to_string())
    }
}

pub fn poly_to_json(p: &Poly<Rational>) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn poly_from_json(v: &[String]) -> DecodeResult<Poly<Rational>> {
    let coeffs = v
        .iter()
        .enumerate()
        .map(|(i, s)| at(&format!("[{i}]"), rational_from_str(s)))
        .collect::<DecodeResult<Vec<_>>>()?;
    Ok(Poly::new(&(), coeffs))
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn rationals(path: &str, v: &[String]) -> DecodeResult<Vec<Rational>> {
    v.iter().enumerate().map(|(i, s)| at(&format!("{path}[{i}]"), rational_from_str(s))).collect()
}

fn rational_rows<const N: usize>(path: &str, v: &[[String; N]]) -> DecodeResult<Vec<[Rational; N]>> {
    v.iter()
        .enumerate()
        .map(|(i, row)| {
            let parsed = rationals(&format!("{path}[{i}]"), row)?;
            Ok(parsed.try_into().expect("fixed length"))
        })
        .collect()
}

fn string_rows<const N: usize>(v: &[[Rational; N]]) -> Vec<[String; N]> {
    v.iter().map(|row| row.clone().map(|c| c.to_string())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AuxJson {
    B { b: String, rows: Vec<[String; 3]>, t: Vec<String>, u: Vec<String> },
    Z { b: String, z: Vec<[String; 2]>, t: Vec<[String; 2]>, u: Vec<String> },
    Kummer { p: u32, t: Vec<String>, u: Vec<String> },
    Baseline { u: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessJson {
    pub family: String,
    pub n: usize,
    pub roots: Vec<Value>,
    pub inner: Vec<String>,
    pub outer: Vec<String>,
    pub aux: AuxJson,
    pub seed: Option<u64>,
}

fn aux_to_json(aux: &Aux) -> AuxJson {
    match aux {
        Aux::B { b, rows, t, u } => {
            AuxJson::B { b: b.to_string(), rows: string_rows(rows), t: strings(t), u: strings(u) }
        }
        Aux::Z { b, z, t, u } => {
            AuxJson::Z { b: b.to_string(), z: string_rows(z), t: string_rows(t), u: strings(u) }
        }
        Aux::Kummer { p, t, u } => AuxJson::Kummer { p: *p, t: strings(t), u: strings(u) },
        Aux::Baseline { u } => AuxJson::Baseline { u: strings(u) },
    }
}

fn aux_from_json(kind: WitnessKind, aux: &AuxJson) -> DecodeResult<Aux> {
    let out = match aux {
        AuxJson::B { b, rows, t, u } => Aux::B {
            b: at("b", rational_from_str(b))?,
            rows: rational_rows("rows", rows)?,
            t: rationals("t", t)?,
            u: rationals("u", u)?,
        },
        AuxJson::Z { b, z, t, u } => Aux::Z {
            b: at("b", rational_from_str(b))?,
            z: rational_rows("z", z)?,
            t: rational_rows("t", t)?,
            u: rationals("u", u)?,
        },
        AuxJson::Kummer { p, t, u } => Aux::Kummer { p: *p, t: rationals("t", t)?, u: rationals("u", u)? },
        AuxJson::Baseline { u } => Aux::Baseline { u: rationals("u", u)? },
    };
    let matches = matches!(
        (kind, &out),
        (WitnessKind::B, Aux::B { .. })
            | (WitnessKind::Z, Aux::Z { .. })
            | (WitnessKind::Kummer, Aux::Kummer { .. })
            | (WitnessKind::Baseline, Aux::Baseline { .. })
    );
    if !matches {
        return Err(format!("aux fields do not match witness family {}", kind.name()));
    }
    Ok(out)
}

pub fn witness_to_json<F: JsonScalar>(w: &CompositeWitness<F>) -> WitnessJson {
    WitnessJson {
        family: w.kind.name().to_string(),
        n: w.n,
        roots: w.roots.iter().map(JsonScalar::to_json).collect(),
        inner: poly_to_json(&w.inner),
        outer: poly_to_json(&w.outer),
        aux: aux_to_json(&w.aux),
        seed: w.seed,
    }
}

pub fn witness_from_json<F: JsonScalar>(w: &WitnessJson) -> DecodeResult<CompositeWitness<F>> {
    let kind = WitnessKind::from_name(&w.family).ok_or_else(|| format!("family: unknown witness family {:?}", w.family))?;
    let roots = w
        .roots
        .iter()
        .enumerate()
        .map(|(i, r)| at(&format!("roots[{i}]"), F::from_json(r)))
        .collect::<DecodeResult<Vec<_>>>()?;
    Ok(CompositeWitness {
        kind,
        n: w.n,
        roots,
        inner: at("inner", poly_from_json(&w.inner))?,
        outer: at("outer", poly_from_json(&w.outer))?,
        aux: at("aux", aux_from_json(kind, &w.aux))?,
        seed: w.seed,
    })
}

pub fn any_witness_to_json(w: &AnyWitness) -> WitnessJson {
    match w {
        AnyWitness::Rational(w) => witness_to_json(w),
        AnyWitness::Cyclotomic(w) => witness_to_json(w),
    }
}

pub fn any_witness_from_json(w: &WitnessJson) -> DecodeResult<AnyWitness> {
    if w.family == WitnessKind::Kummer.name() {
        witness_from_json(w).map(AnyWitness::Cyclotomic)
    } else {
        witness_from_json(w).map(AnyWitness::Rational)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedJson {
    pub genus: usize,
    #[serde(rename = "N")]
    pub points: usize,
    #[serde(rename = "R")]
    pub rank: usize,
    pub rank_note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveJson {
    pub family: String,
    pub d: usize,
    pub f: Vec<String>,
    pub genus: usize,
    pub points: Vec<[Value; 2]>,
    pub expected: Option<ExpectedJson>,
    pub witness: WitnessJson,
    /// Number of leading points taken from the table formulas.
    pub primary: usize,
    pub h: Vec<String>,
    pub ell: Vec<String>,
    pub inner: Vec<String>,
}

fn point_to_json<F: JsonScalar>(p: &CurvePoint<F>) -> [Value; 2] {
    match p {
        CurvePoint::Affine { x, y } => [x.to_json(), y.to_json()],
        CurvePoint::Infinity(b) => {
            let sign = match b {
                Branch::Plus => "+",
                Branch::Minus => "-",
            };
            [json!("inf"), json!(sign)]
        }
    }
}

fn point_from_json<F: JsonScalar>(p: &[Value; 2]) -> DecodeResult<CurvePoint<F>> {
    if p[0].as_str() == Some("inf") {
        return match p[1].as_str() {
            Some("+") => Ok(CurvePoint::Infinity(Branch::Plus)),
            Some("-") | Some("\u{2212}") => Ok(CurvePoint::Infinity(Branch::Minus)),
            _ => Err(format!("point at infinity needs \"+\" or \"-\", found {}", p[1])),
        };
    }
    Ok(CurvePoint::Affine { x: at("x", F::from_json(&p[0]))?, y: at("y", F::from_json(&p[1]))? })
}

pub fn curve_to_json<F: JsonScalar>(c: &CurveSpec<F>) -> CurveJson {
    CurveJson {
        family: c.family.name().to_string(),
        d: c.d,
        f: poly_to_json(&c.f),
        genus: c.genus,
        points: c.points.iter().map(point_to_json).collect(),
        expected: c.expected.map(|e| ExpectedJson {
            genus: e.genus,
            points: e.points,
            rank: e.rank,
            rank_note: RANK_NOTE.to_string(),
        }),
        witness: witness_to_json(&c.witness),
        primary: c.primary,
        h: poly_to_json(&c.h),
        ell: poly_to_json(&c.ell),
        inner: poly_to_json(&c.inner),
    }
}

pub fn curve_from_json<F: JsonScalar>(c: &CurveJson) -> DecodeResult<CurveSpec<F>> {
    let family = Family::from_name(&c.family).ok_or_else(|| format!("family: unknown family {:?}", c.family))?;
    let points = c
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| at(&format!("points[{i}]"), point_from_json(p)))
        .collect::<DecodeResult<Vec<_>>>()?;
    if c.primary > points.len() {
        return Err(format!("primary: {} exceeds the {} listed points", c.primary, points.len()));
    }
    Ok(CurveSpec {
        family,
        d: c.d,
        f: at("f", poly_from_json(&c.f))?,
        genus: c.genus,
        points,
        primary: c.primary,
        h: at("h", poly_from_json(&c.h))?,
        ell: at("ell", poly_from_json(&c.ell))?,
        inner: at("inner", poly_from_json(&c.inner))?,
        witness: at("witness", witness_from_json(&c.witness))?,
        expected: c.expected.as_ref().map(|e| Expected { genus: e.genus, points: e.points, rank: e.rank }),
    })
}

pub fn any_curve_to_json(c: &AnyCurve) -> CurveJson {
    match c {
        AnyCurve::Rational(c) => curve_to_json(c),
        AnyCurve::Cyclotomic(c) => curve_to_json(c),
    }
}

pub fn any_curve_from_json(c: &CurveJson) -> DecodeResult<AnyCurve> {
    if c.family == Family::Kummer.name() {
        curve_from_json(c).map(AnyCurve::Cyclotomic)
    } else {
        curve_from_json(c).map(AnyCurve::Rational)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReportJson {
    pub pass: bool,
    pub mismatch_coefficient: Option<usize>,
    pub bad_points: Vec<usize>,
    pub f_matches: bool,
    pub relation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReportJson {
    pub family: String,
    pub d: usize,
    pub genus: usize,
    pub points: usize,
    pub checks: Vec<CheckJson>,
    /// Indices of listed points failing `y^2 = f(x)`.
    pub off_curve: Vec<usize>,
    pub relation_witness: Option<WitnessReportJson>,
    pub relation_witness_error: Option<String>,
    /// `None` when the family has no rational Weierstrass point at `(0, 0)`
    /// on an odd-degree model.
    pub two_torsion: Option<bool>,
    pub rank_note: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveReportJson {
    pub family: String,
    pub d: usize,
    pub classes: String,
    pub labels: Vec<String>,
    pub primes: Vec<u64>,
    pub bound: u32,
    pub support: usize,
    pub found: Vec<Vec<i64>>,
    pub claimed: Vec<Vec<i64>>,
    pub expected: Vec<Vec<i64>>,
    pub unexpected: Vec<Vec<i64>>,
    pub missing: Vec<Vec<i64>>,
    pub first_prime_hits: usize,
    pub group_ops: u64,
    pub verdict: String,
    pub scope: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IgusaJson {
    #[serde(rename = "I2")]
    pub i2: String,
    #[serde(rename = "I4")]
    pub i4: String,
    #[serde(rename = "I6")]
    pub i6: String,
    #[serde(rename = "I10")]
    pub i10: String,
}

impl From<&IgusaTuple> for IgusaJson {
    fn from(t: &IgusaTuple) -> Self {
        IgusaJson { i2: t.i2.to_string(), i4: t.i4.to_string(), i6: t.i6.to_string(), i10: t.i10.to_string() }
    }
}

impl IgusaJson {
    pub fn to_tuple(&self) -> DecodeResult<IgusaTuple> {
        Ok(IgusaTuple {
            i2: at("I2", rational_from_str(&self.i2))?,
            i4: at("I4", rational_from_str(&self.i4))?,
            i6: at("I6", rational_from_str(&self.i6))?,
            i10: at("I10", rational_from_str(&self.i10))?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareJson {
    pub a: IgusaJson,
    pub b: IgusaJson,
    pub equivalent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub family: String,
    pub d: usize,
    pub seed: u64,
    pub file: Option<String>,
    pub exit_code: i32,
    pub genus: Option<usize>,
    pub points: Option<usize>,
    pub attempts: Option<u32>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestJson {
    pub command: String,
    pub entries: Vec<ManifestEntry>,
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
