use std::fmt::Write as _;
use std::path::Path;

use qformkit_core::io::{
    diagonalization_to_json, homogeneous_verdict_to_json, parse_form_json, parse_poly_json,
    parse_transform_json, report_to_json, simdiag_to_json, verdict_to_json, witness_to_json,
};
use qformkit_core::{
    check_interval_invariance, decide_containment, decide_containment_homogeneous, simdiag_general,
    verify_poly_witness, verify_witness, ContainmentVerdict, Error, HomogeneousPoly,
    HomogeneousVerdict, LinearTransform, QuadraticForm, Rational, TransformClass, WitnessVector,
};
use serde_json::{json, Value};

/// What a command produced: JSON and text renderings of the same data,
/// plus the exit code.
pub struct Outcome {
    pub json: Value,
    pub human: String,
    pub code: u8,
    pub note: Option<String>,
}

impl Outcome {
    pub fn new(json: Value, human: String, code: u8) -> Self {
        Outcome {
            json,
            human,
            code,
            note: None,
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const EXIT_REFUTED: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_NOT_SYMMETRIC: u8 = 3;
pub const EXIT_NOT_INDEFINITE: u8 = 4;
pub const EXIT_OTHER: u8 = 5;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) => EXIT_PARSE,
            Error::NotSymmetric { .. } => EXIT_NOT_SYMMETRIC,
            Error::NotIndefinite { .. } => EXIT_NOT_INDEFINITE,
            _ => EXIT_OTHER,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{}: {e}", path.display()),
    })
}

fn with_path(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    }
}

pub fn load_form(path: &Path) -> Result<QuadraticForm, Failure> {
    parse_form_json(&read_file(path)?).map_err(with_path(path))
}

fn load_poly(path: &Path) -> Result<HomogeneousPoly, Failure> {
    parse_poly_json(&read_file(path)?).map_err(with_path(path))
}

fn load_transform(path: &Path) -> Result<LinearTransform, Failure> {
    parse_transform_json(&read_file(path)?).map_err(with_path(path))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Coordinates print as plain rationals when none involves a square root.
pub fn render_coords(w: &WitnessVector) -> String {
    match w.rational_coords() {
        Some(c) => format!("({})", join(&c)),
        None => format!("({})", join(&w.coords)),
    }
}

fn witness_text(w: &WitnessVector) -> String {
    format!(
        "v = {}\nq(v) = {}\nr(v) = {}\n",
        render_coords(w),
        w.q_value.render_compact(),
        w.r_value.render_compact()
    )
}

fn unverified() -> Failure {
    Failure {
        code: EXIT_OTHER,
        message: "internal error: witness failed independent verification".into(),
    }
}

pub fn analyze(path: &Path) -> Result<Outcome, Failure> {
    let q = load_form(path)?;
    let d = q.congruence_diagonalize();
    let class = qformkit_core::Classification::from_inertia(d.inertia);
    let human = format!(
        "inertia {}, {}\ndiagonal: {}\n",
        d.inertia,
        class,
        join(&d.diag)
    );
    let json = json!({
        "inertia": [d.inertia.positive, d.inertia.negative, d.inertia.zero],
        "classification": class.as_str(),
        "diag": d.diag.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(json, human, 0))
}

pub fn canon(path: &Path) -> Result<Outcome, Failure> {
    let q = load_form(path)?;
    let d = q.congruence_diagonalize();
    let mut human = String::from("B =\n");
    for i in 0..d.dim() {
        let _ = writeln!(human, "  [{}]", join(d.basis.row(i)));
    }
    let _ = writeln!(human, "diagonal: {}", join(&d.diag));
    let _ = writeln!(human, "inertia {}", d.inertia);
    Ok(Outcome::new(diagonalization_to_json(&d), human, 0))
}

pub fn contain(q_path: &Path, r_path: &Path) -> Result<Outcome, Failure> {
    let q = load_form(q_path)?;
    let r = load_form(r_path)?;
    let verdict = decide_containment(&q, &r)?;
    let json = verdict_to_json(&verdict);
    match &verdict {
        ContainmentVerdict::Proportional(alpha) => Ok(Outcome::new(
            json,
            format!("proportional: alpha = {alpha}\n"),
            0,
        )),
        ContainmentVerdict::Counterexample(w) => {
            if !verify_witness(&q, &r, w)? {
                return Err(unverified());
            }
            let human = format!("counterexample\n{}", witness_text(w));
            Ok(Outcome::new(json, human, EXIT_REFUTED))
        }
    }
}

pub fn poly_contain(
    q_path: &Path,
    r_path: &Path,
    budget: usize,
    seed: u64,
) -> Result<Outcome, Failure> {
    let q = load_form(q_path)?;
    let r = load_poly(r_path)?;
    let verdict = decide_containment_homogeneous(&q, &r, budget, seed)?;
    let json = homogeneous_verdict_to_json(&verdict);
    match &verdict {
        HomogeneousVerdict::Divisible(s) => {
            Ok(Outcome::new(json, format!("divisible: r = q * ({s})\n"), 0))
        }
        HomogeneousVerdict::Witness(w) => {
            if !verify_poly_witness(&q, &r, w)? {
                return Err(unverified());
            }
            let human = format!("not contained\n{}", witness_text(w));
            Ok(Outcome::new(json, human, EXIT_REFUTED))
        }
        HomogeneousVerdict::NonDivisibleWitnessBudgetExhausted { remainder } => {
            let human = format!(
                "not divisible: remainder {remainder}\nno witness found within budget {budget} (seed {seed})\n"
            );
            Ok(Outcome::new(json, human, EXIT_REFUTED))
        }
    }
}

fn floats(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| format!("{x:.12}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn simdiag(q_path: &Path, r_path: &Path, tol: f64) -> Result<Outcome, Failure> {
    let q = load_form(q_path)?;
    let r = load_form(r_path)?;
    match simdiag_general(&q, &r, tol) {
        Ok(res) => {
            let mut human = String::from("basis columns:\n");
            for col in &res.basis {
                let _ = writeln!(human, "  [{}]", floats(col));
            }
            let _ = writeln!(human, "q diagonal: {}", floats(&res.q_diag));
            let _ = writeln!(human, "r diagonal: {}", floats(&res.r_diag));
            let _ = writeln!(human, "residual: {:e}", res.residual);
            Ok(Outcome::new(simdiag_to_json(&res), human, 0))
        }
        Err(Error::ContainmentFails(w)) => {
            let mut json = json!({ "verdict": "containment-fails" });
            let mut human = String::from("zero set of q is not contained in the zero set of r\n");
            if let Some(w) = w {
                if !verify_witness(&q, &r, &w)? {
                    return Err(unverified());
                }
                json["witness"] = witness_to_json(&w);
                json["q_value"] = Value::String(w.q_value.render_compact());
                json["r_value"] = Value::String(w.r_value.render_compact());
                human.push_str(&witness_text(&w));
            }
            Ok(Outcome::new(json, human, EXIT_REFUTED))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn lorentz(path: &Path, c: &Rational) -> Result<Outcome, Failure> {
    let l = load_transform(path)?;
    let report = check_interval_invariance(&l, c)?;
    let mut human = match &report.kappa {
        Some(k) => format!("kappa = {k}, {}\n", report.classification),
        None => format!("{}\n", report.classification),
    };
    let code = match report.classification {
        TransformClass::ConeBreaking | TransformClass::Degenerate => EXIT_REFUTED,
        _ => 0,
    };
    if let Some(w) = &report.witness_event {
        let q = qformkit_core::minkowski_form(c, l.dim() - 1)?;
        if !verify_witness(&q, &report.pulled_back_form, w)? {
            return Err(unverified());
        }
        human.push_str("lightlike event whose image is not lightlike:\n");
        human.push_str(&witness_text(w));
    }
    Ok(Outcome::new(report_to_json(&report), human, code))
}
