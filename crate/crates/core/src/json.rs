//! JSON schemas and loaders.
//!
//! Operator files: `{"dim": d, "mode": "exact"|"float", "pairs": [{"x":
//! [..], "xstar": [..]}, ...]}` with numbers written as "p/q" strings in
//! exact mode and as plain JSON numbers in float mode. Cones and polyhedra
//! carry `"dim"` plus `"normals"` / `"generators"` / `"constraints"`, with
//! numbers as "p/q" or decimal strings. Emission is canonical: loading a
//! file this module wrote and re-emitting it reproduces the bytes.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::certify::{Certificate, Grid, Verdict, Witness};
use crate::cones::{HCone, HPolyhedron, SetClass, VCone};
use crate::error::Error;
use crate::mvip::ConstraintSet;
use crate::operator::{OperatorGraph, Pair};
use crate::scalar::{Mode, Scalar, Vector};

/// How to interpret numbers when loading an operator file.
#[derive(Clone, Copy, Debug)]
pub struct LoadOptions {
    /// Overrides the file's "mode" field when set.
    pub mode_override: Option<ModeChoice>,
    /// Tolerance used whenever the result is float-mode.
    pub eps: f64,
    /// When set, non-rational floats headed into exact mode are snapped to
    /// rationals with denominators up to this bound instead of rejected.
    pub max_denominator: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeChoice {
    Exact,
    Float,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            mode_override: None,
            eps: Mode::DEFAULT_EPS,
            max_denominator: None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawOperator {
    dim: usize,
    mode: String,
    pairs: Vec<RawPair>,
}

#[derive(Serialize, Deserialize)]
struct RawPair {
    x: Vec<RawScalar>,
    xstar: Vec<RawScalar>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Num(f64),
    Str(String),
}

fn raw_to_scalar(raw: &RawScalar, mode: &Mode, opts: &LoadOptions) -> Result<Scalar, Error> {
    match mode {
        Mode::Exact => match raw {
            RawScalar::Int(v) => Ok(Scalar::from_int(*v)),
            RawScalar::Str(s) => Scalar::parse_exact(s),
            RawScalar::Num(f) => {
                if f.fract() == 0.0 && f.abs() < 2f64.powi(53) {
                    Ok(Scalar::from_int(*f as i64))
                } else if let Some(max_den) = opts.max_denominator {
                    Scalar::snap_to_rational(*f, max_den)
                } else {
                    Err(Error::parse(format!(
                        "non-integer number {f} in exact mode; pass a \"p/q\" string or enable snapping"
                    )))
                }
            }
        },
        Mode::Float { .. } => match raw {
            RawScalar::Int(v) => Scalar::float(*v as f64),
            RawScalar::Num(f) => Scalar::float(*f),
            RawScalar::Str(s) => Ok(Scalar::Float(Scalar::parse_exact(s)?.to_f64())),
        },
    }
}

fn scalar_to_raw(s: &Scalar) -> Value {
    match s {
        Scalar::Exact(_) => Value::String(s.canonical_string()),
        Scalar::Float(f) => json!(f),
    }
}

fn vector_to_raw(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_raw).collect())
}

/// Numbers-as-strings form used by cone and polyhedron emission.
fn vector_to_strings(v: &[Scalar]) -> Value {
    Value::Array(
        v.iter()
            .map(|s| Value::String(s.canonical_string()))
            .collect(),
    )
}

pub fn load_operator(text: &str, opts: &LoadOptions) -> Result<OperatorGraph, Error> {
    let raw: RawOperator =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("operator json: {e}")))?;
    let file_mode = match raw.mode.as_str() {
        "exact" => ModeChoice::Exact,
        "float" => ModeChoice::Float,
        other => {
            return Err(Error::parse(format!(
                "unknown mode {other:?}; expected \"exact\" or \"float\""
            )))
        }
    };
    let mode = match opts.mode_override.unwrap_or(file_mode) {
        ModeChoice::Exact => Mode::Exact,
        ModeChoice::Float => Mode::Float { eps: opts.eps },
    };
    let mut pairs = Vec::with_capacity(raw.pairs.len());
    for rp in &raw.pairs {
        let x = rp
            .x
            .iter()
            .map(|r| raw_to_scalar(r, &mode, opts))
            .collect::<Result<Vector, _>>()?;
        let xstar = rp
            .xstar
            .iter()
            .map(|r| raw_to_scalar(r, &mode, opts))
            .collect::<Result<Vector, _>>()?;
        pairs.push(Pair::new(x, xstar));
    }
    OperatorGraph::new(raw.dim, mode, pairs)
}

pub fn operator_to_value(t: &OperatorGraph) -> Value {
    json!({
        "dim": t.dim(),
        "mode": if t.mode().is_exact() { "exact" } else { "float" },
        "pairs": t.pairs().iter().map(|p| json!({
            "x": vector_to_raw(&p.x),
            "xstar": vector_to_raw(&p.xstar),
        })).collect::<Vec<_>>(),
    })
}

pub fn operator_to_string(t: &OperatorGraph) -> String {
    let mut s = serde_json::to_string_pretty(&operator_to_value(t)).expect("valid json");
    s.push('\n');
    s
}

pub fn pair_to_value(p: &Pair) -> Value {
    json!({
        "x": vector_to_raw(&p.x),
        "xstar": vector_to_raw(&p.xstar),
    })
}

pub fn hcone_to_value(c: &HCone) -> Value {
    json!({
        "dim": c.dim(),
        "normals": c.normals().iter().map(|n| vector_to_strings(n)).collect::<Vec<_>>(),
    })
}

pub fn vcone_to_value(c: &VCone) -> Value {
    json!({
        "dim": c.dim(),
        "generators": c.generators().iter().map(|g| vector_to_strings(g)).collect::<Vec<_>>(),
    })
}

pub fn polyhedron_to_value(p: &HPolyhedron) -> Value {
    json!({
        "dim": p.dim(),
        "constraints": p.constraints().iter().map(|(n, r)| json!({
            "normal": vector_to_strings(n),
            "rhs": r.canonical_string(),
        })).collect::<Vec<_>>(),
    })
}

pub fn set_class_to_value(c: &SetClass) -> Value {
    match c {
        SetClass::Empty => json!({"class": "empty"}),
        SetClass::Singleton(p) => json!({"class": "singleton", "point": vector_to_raw(p)}),
        SetClass::Larger => json!({"class": "larger"}),
    }
}

fn witness_to_value(w: &Witness) -> Value {
    match w {
        Witness::Pair(p) => json!({"pair": pair_to_value(p)}),
        Witness::PairOfPairs(p, q) => json!({"pairs": [pair_to_value(p), pair_to_value(q)]}),
    }
}

pub fn certificate_to_value(c: &Certificate) -> Value {
    let mut v = json!({
        "claim": c.claim.tag(),
        "verdict": c.verdict.kind(),
    });
    let obj = v.as_object_mut().expect("object");
    if let Some(w) = c.verdict.witness() {
        obj.insert("witness".into(), witness_to_value(w));
    }
    if let Verdict::ConsistentOnGrid(d) = &c.verdict {
        obj.insert(
            "grid".into(),
            json!({
                "base_points": d.base_points,
                "probe_covectors": d.probe_covectors,
                "digest": d.digest,
            }),
        );
    }
    v
}

#[derive(Deserialize)]
struct RawGrid {
    dim: usize,
    base_points: Vec<Vec<RawScalar>>,
    #[serde(default)]
    probe_covectors: Vec<Vec<RawScalar>>,
}

pub fn load_grid(text: &str, mode: Mode, opts: &LoadOptions) -> Result<Grid, Error> {
    let raw: RawGrid =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("grid json: {e}")))?;
    let conv = |vals: &Vec<Vec<RawScalar>>| -> Result<Vec<Vector>, Error> {
        vals.iter()
            .map(|v| v.iter().map(|r| raw_to_scalar(r, &mode, opts)).collect())
            .collect()
    };
    Grid::new(
        raw.dim,
        mode,
        conv(&raw.base_points)?,
        conv(&raw.probe_covectors)?,
    )
}

pub fn grid_to_value(g: &Grid) -> Value {
    json!({
        "dim": g.dim(),
        "base_points": g.base_points().iter().map(|p| vector_to_raw(p)).collect::<Vec<_>>(),
        "probe_covectors": g.probe_covectors().iter().map(|p| vector_to_raw(p)).collect::<Vec<_>>(),
    })
}

#[derive(Deserialize)]
struct RawConstraintSet {
    dim: usize,
    points: Vec<Vec<RawScalar>>,
}

pub fn load_constraint_set(
    text: &str,
    mode: Mode,
    opts: &LoadOptions,
) -> Result<ConstraintSet, Error> {
    let raw: RawConstraintSet =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("constraint set json: {e}")))?;
    let points = raw
        .points
        .iter()
        .map(|v| v.iter().map(|r| raw_to_scalar(r, &mode, opts)).collect())
        .collect::<Result<Vec<Vector>, _>>()?;
    ConstraintSet::new(raw.dim, mode, points)
}

pub fn constraint_set_to_value(k: &ConstraintSet) -> Value {
    json!({
        "dim": k.dim(),
        "points": k.points().iter().map(|p| vector_to_raw(p)).collect::<Vec<_>>(),
    })
}

pub fn points_to_value(points: &[Vector]) -> Value {
    Value::Array(points.iter().map(|p| vector_to_raw(p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_round_trip_is_byte_identical() {
        let text = r#"{"dim":1,"mode":"exact","pairs":[{"x":["1/2"],"xstar":["1"]},{"x":["-2"],"xstar":["1"]}]}"#;
        let t = load_operator(text, &LoadOptions::default()).unwrap();
        let emitted = operator_to_string(&t);
        let t2 = load_operator(&emitted, &LoadOptions::default()).unwrap();
        assert_eq!(t, t2);
        assert_eq!(emitted, operator_to_string(&t2));
    }

    #[test]
    fn exact_mode_accepts_integers_rejects_raw_floats() {
        let ok = r#"{"dim":1,"mode":"exact","pairs":[{"x":[2],"xstar":[1]}]}"#;
        assert!(load_operator(ok, &LoadOptions::default()).is_ok());
        let bad = r#"{"dim":1,"mode":"exact","pairs":[{"x":[0.5],"xstar":[1]}]}"#;
        assert!(load_operator(bad, &LoadOptions::default()).is_err());
        let snapped = load_operator(
            bad,
            &LoadOptions {
                max_denominator: Some(10),
                ..LoadOptions::default()
            },
        )
        .unwrap();
        assert_eq!(snapped.pairs()[0].x, vec![Scalar::rational(1, 2)]);
    }

    #[test]
    fn float_mode_reads_numbers_and_strings() {
        let text = r#"{"dim":1,"mode":"float","pairs":[{"x":[0.5],"xstar":["1/4"]}]}"#;
        let t = load_operator(text, &LoadOptions::default()).unwrap();
        assert_eq!(t.pairs()[0].x, vec![Scalar::Float(0.5)]);
        assert_eq!(t.pairs()[0].xstar, vec![Scalar::Float(0.25)]);
        assert!(!t.mode().is_exact());
    }

    #[test]
    fn mode_override_converts() {
        let text = r#"{"dim":1,"mode":"exact","pairs":[{"x":["1/2"],"xstar":["1"]}]}"#;
        let t = load_operator(
            text,
            &LoadOptions {
                mode_override: Some(ModeChoice::Float),
                ..LoadOptions::default()
            },
        )
        .unwrap();
        assert_eq!(t.pairs()[0].x, vec![Scalar::Float(0.5)]);
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(
            load_operator("{", &LoadOptions::default()),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            load_operator(r#"{"dim":1,"mode":"weird","pairs":[]}"#, &LoadOptions::default()),
            Err(Error::Parse(_))
        ));
    }
}
