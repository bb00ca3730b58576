//! JSON exchange formats.
//!
//! Matrices: `{"dim": n, "rows": [[...], ...]}` with entries given as JSON
//! integers or `"n/d"` strings. Polynomials:
//! `{"nvars": n, "degree": d, "terms": [{"exp": [...], "coef": "n/d"}]}`.
//! Everything rendered here uses insertion-ordered objects, so output is
//! byte-stable for identical input.

use serde_json::{json, Map, Value};

use crate::containment::{ContainmentVerdict, WitnessVector};
use crate::error::{Error, Result};
use crate::form::{CongruenceDiagonalization, LinearTransform, QuadraticForm};
use crate::matrix::Matrix;
use crate::poly::{DivisionResult, HomogeneousPoly, HomogeneousVerdict};
use crate::relativity::TransformReport;
use crate::scalar::Rational;
use crate::semidefinite::{SimDiagResult, SubspaceBasis};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_entry(v: &Value, what: &str) -> Result<Rational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_int(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from(num_bigint::BigInt::from(u)))
            } else {
                Err(parse_err(format!(
                    "{what}: {n} is not an integer; write fractions as \"n/d\" strings"
                )))
            }
        }
        Value::String(s) => s
            .parse()
            .map_err(|_| parse_err(format!("{what}: {s:?} is not a rational"))),
        other => Err(parse_err(format!(
            "{what}: expected integer or \"n/d\" string, got {other}"
        ))),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("{what} must be a nonnegative integer")))
}

pub fn parse_matrix_json(text: &str) -> Result<Matrix> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err("expected a JSON object"))?;
    let dim = as_usize(field(obj, "dim")?, "dim")?;
    if dim == 0 {
        return Err(parse_err("dim must be positive"));
    }
    let rows = field(obj, "rows")?
        .as_array()
        .ok_or_else(|| parse_err("rows must be an array"))?;
    if rows.len() != dim {
        return Err(parse_err(format!(
            "expected {dim} rows, found {}",
            rows.len()
        )));
    }
    let mut out = Vec::with_capacity(dim);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| parse_err(format!("row {i} must be an array")))?;
        if row.len() != dim {
            return Err(parse_err(format!(
                "row {i} has {} entries, expected {dim}",
                row.len()
            )));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, e)| parse_entry(e, &format!("entry ({i},{j})")))
            .collect::<Result<Vec<_>>>()?;
        out.push(parsed);
    }
    Matrix::from_rows(out)
}

/// Parses and validates a symmetric matrix.
pub fn parse_form_json(text: &str) -> Result<QuadraticForm> {
    QuadraticForm::new(parse_matrix_json(text)?)
}

pub fn parse_transform_json(text: &str) -> Result<LinearTransform> {
    LinearTransform::new(parse_matrix_json(text)?)
}

pub fn parse_poly_json(text: &str) -> Result<HomogeneousPoly> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err("expected a JSON object"))?;
    let nvars = as_usize(field(obj, "nvars")?, "nvars")?;
    if nvars == 0 {
        return Err(parse_err("nvars must be positive"));
    }
    let degree = as_usize(field(obj, "degree")?, "degree")? as u32;
    let terms = field(obj, "terms")?
        .as_array()
        .ok_or_else(|| parse_err("terms must be an array"))?;
    let mut parsed = Vec::with_capacity(terms.len());
    for (k, term) in terms.iter().enumerate() {
        let t = term
            .as_object()
            .ok_or_else(|| parse_err(format!("term {k} must be an object")))?;
        let exp = field(t, "exp")?
            .as_array()
            .ok_or_else(|| parse_err(format!("term {k}: exp must be an array")))?
            .iter()
            .map(|e| {
                e.as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| {
                        parse_err(format!("term {k}: exponents must be nonnegative integers"))
                    })
            })
            .collect::<Result<Vec<u32>>>()?;
        if exp.len() != nvars {
            return Err(parse_err(format!(
                "term {k}: exp has {} entries, expected {nvars}",
                exp.len()
            )));
        }
        let total: u32 = exp.iter().sum();
        if total != degree {
            return Err(parse_err(format!(
                "term {k}: exponents sum to {total}, expected degree {degree}"
            )));
        }
        let coef = parse_entry(field(t, "coef")?, &format!("term {k} coef"))?;
        parsed.push((exp, coef));
    }
    HomogeneousPoly::from_terms(nvars, degree, parsed)
}

fn rat(x: &Rational) -> Value {
    Value::String(x.to_string())
}

fn rat_vec(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rat).collect())
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    json!({
        "dim": m.rows(),
        "rows": (0..m.rows()).map(|i| rat_vec(m.row(i))).collect::<Vec<_>>(),
    })
}

pub fn form_to_json(q: &QuadraticForm) -> Value {
    matrix_to_json(q.matrix())
}

pub fn poly_to_json(p: &HomogeneousPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .rev()
        .map(|(e, c)| json!({ "exp": e, "coef": rat(c) }))
        .collect();
    json!({ "nvars": p.nvars(), "degree": p.degree(), "terms": terms })
}

pub fn witness_to_json(w: &WitnessVector) -> Value {
    let coords: Vec<Value> = w
        .coords
        .iter()
        .map(|c| json!([rat(&c.rat), rat(&c.rad)]))
        .collect();
    json!({ "t": rat(&w.radicand()), "coords": coords })
}

pub fn verdict_to_json(v: &ContainmentVerdict) -> Value {
    match v {
        ContainmentVerdict::Proportional(alpha) => {
            json!({ "verdict": "proportional", "alpha": rat(alpha) })
        }
        ContainmentVerdict::Counterexample(w) => json!({
            "verdict": "counterexample",
            "witness": witness_to_json(w),
            "q_value": w.q_value.render_compact(),
            "r_value": w.r_value.render_compact(),
        }),
    }
}

pub fn division_to_json(d: &DivisionResult) -> Value {
    json!({ "quotient": poly_to_json(&d.quotient), "remainder": poly_to_json(&d.remainder) })
}

pub fn homogeneous_verdict_to_json(v: &HomogeneousVerdict) -> Value {
    match v {
        HomogeneousVerdict::Divisible(s) => {
            json!({ "verdict": "divisible", "quotient": poly_to_json(s) })
        }
        HomogeneousVerdict::Witness(w) => json!({
            "verdict": "witness",
            "witness": witness_to_json(w),
            "q_value": w.q_value.render_compact(),
            "r_value": w.r_value.render_compact(),
        }),
        HomogeneousVerdict::NonDivisibleWitnessBudgetExhausted { remainder } => json!({
            "verdict": "non-divisible-budget-exhausted",
            "remainder": poly_to_json(remainder),
        }),
    }
}

pub fn diagonalization_to_json(d: &CongruenceDiagonalization) -> Value {
    json!({
        "inertia": [d.inertia.positive, d.inertia.negative, d.inertia.zero],
        "diag": rat_vec(&d.diag),
        "basis_columns": (0..d.dim()).map(|j| rat_vec(&d.basis.column(j))).collect::<Vec<_>>(),
    })
}

pub fn subspace_to_json(s: &SubspaceBasis) -> Value {
    json!({
        "dim_ambient": s.dim_ambient,
        "vectors": s.vectors.iter().map(|v| rat_vec(v)).collect::<Vec<_>>(),
    })
}

pub fn simdiag_to_json(r: &SimDiagResult) -> Value {
    json!({
        "basis_columns": r.basis,
        "q_diag": r.q_diag,
        "r_diag": r.r_diag,
        "residual": r.residual,
    })
}

/// `kappa` is the proportionality constant of the pulled-back interval,
/// the same quantity as `alpha` in a containment verdict.
pub fn report_to_json(r: &TransformReport) -> Value {
    let mut obj = Map::new();
    obj.insert("kappa".into(), r.kappa.as_ref().map_or(Value::Null, rat));
    obj.insert(
        "classification".into(),
        Value::String(r.classification.to_string()),
    );
    obj.insert(
        "witness_event".into(),
        r.witness_event.as_ref().map_or(Value::Null, |w| {
            json!({
                "witness": witness_to_json(w),
                "q_value": w.q_value.render_compact(),
                "r_value": w.r_value.render_compact(),
            })
        }),
    );
    obj.insert("pulled_back_form".into(), form_to_json(&r.pulled_back_form));
    Value::Object(obj)
}
