//! The worked examples, run end to end.

use std::fmt::Write as _;
use std::path::Path;

use qformkit_core::io::{
    form_to_json, parse_form_json, parse_transform_json, report_to_json, simdiag_to_json,
    subspace_to_json,
};
use qformkit_core::{
    boost_from_triple, check_interval_invariance, containment_psd, decide_containment,
    kernel_basis, simdiag_psd, verify_witness, Error, Inertia, LinearTransform, QuadraticForm,
    Rational, SpatialAxis, TransformClass,
};
use serde_json::{json, Map, Value};

use crate::commands::{read_file, Failure, Outcome, EXIT_PARSE, EXIT_REFUTED};

const EMBEDDED: &[(&str, &str)] = &[
    ("substitution_form", include_str!("../fixtures/substitution_form.json")),
    (
        "substitution_map",
        include_str!("../fixtures/substitution_map.json"),
    ),
    (
        "substitution_pullback",
        include_str!("../fixtures/substitution_pullback.json"),
    ),
    ("trap_q", include_str!("../fixtures/trap_q.json")),
    ("trap_r", include_str!("../fixtures/trap_r.json")),
    (
        "cone_breaker",
        include_str!("../fixtures/cone_breaker.json"),
    ),
];

struct Fixtures<'a> {
    dir: Option<&'a Path>,
}

impl Fixtures<'_> {
    fn text(&self, name: &str) -> Result<String, Failure> {
        match self.dir {
            Some(d) => read_file(&d.join(format!("{name}.json"))),
            None => Ok(EMBEDDED
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, t)| t.to_string())
                .expect("embedded fixture")),
        }
    }

    fn parse_error(name: &str, e: Error) -> Failure {
        Failure {
            code: EXIT_PARSE,
            message: format!("fixture {name}: {e}"),
        }
    }

    fn form(&self, name: &str) -> Result<QuadraticForm, Failure> {
        parse_form_json(&self.text(name)?).map_err(|e| Self::parse_error(name, e))
    }

    fn transform(&self, name: &str) -> Result<LinearTransform, Failure> {
        parse_transform_json(&self.text(name)?).map_err(|e| Self::parse_error(name, e))
    }
}

struct FixtureRun {
    name: &'static str,
    checks: Vec<(String, bool)>,
    data: Map<String, Value>,
}

impl FixtureRun {
    fn new(name: &'static str) -> Self {
        FixtureRun {
            name,
            checks: Vec::new(),
            data: Map::new(),
        }
    }

    fn check(&mut self, what: impl Into<String>, ok: bool) {
        self.checks.push((what.into(), ok));
    }

    fn put(&mut self, key: &str, v: Value) {
        self.data.insert(key.into(), v);
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    fn first_failure(&self) -> Option<&str> {
        self.checks
            .iter()
            .find(|(_, ok)| !ok)
            .map(|(c, _)| c.as_str())
    }

    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|(c, ok)| json!({ "check": c, "passed": ok })).collect::<Vec<_>>(),
            "data": Value::Object(self.data.clone()),
        })
    }
}

/// `Some(α)` when `r = α q` entrywise.
fn ratio(q: &QuadraticForm, r: &QuadraticForm) -> Option<Rational> {
    let n = q.dim();
    let (i, j) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| !q.entry(i, j).is_zero())?;
    let alpha = r.entry(i, j) / q.entry(i, j);
    (q.scale(&alpha) == *r).then_some(alpha)
}

fn inertia_json(i: Inertia) -> Value {
    json!([i.positive, i.negative, i.zero])
}

fn substitution(fx: &Fixtures, tol: f64) -> Result<FixtureRun, Failure> {
    let mut run = FixtureRun::new("substitution");
    let s_primed = fx.form("substitution_form")?;
    let l = fx.transform("substitution_map")?;
    let expected = fx.form("substitution_pullback")?;

    let pulled = s_primed.apply_transform(&l)?;
    run.put("pulled_back_form", form_to_json(&pulled));
    run.check(
        "substitution yields 8x^2+16y^2+10z^2+16xy-16xz-24yz",
        pulled == expected,
    );
    run.check(
        "forms are not proportional",
        ratio(&s_primed, &pulled).is_none(),
    );

    let target = Inertia {
        positive: 2,
        negative: 0,
        zero: 1,
    };
    run.put(
        "inertia",
        json!([
            inertia_json(s_primed.inertia()),
            inertia_json(pulled.inertia())
        ]),
    );
    run.check(
        "both forms have inertia (2,0,1)",
        s_primed.inertia() == target && pulled.inertia() == target,
    );

    let k1 = kernel_basis(&s_primed)?;
    let k2 = kernel_basis(&pulled)?;
    run.put("kernel", subspace_to_json(&k1));
    let span_112 = |k: &qformkit_core::SubspaceBasis| {
        k.dim() == 1 && k.vectors[0] == [1, 1, 2].map(Rational::from_int).to_vec()
    };
    run.check(
        "both kernels are span{(1,1,2)}",
        span_112(&k1) && span_112(&k2),
    );
    run.check(
        "zero sets coincide",
        containment_psd(&s_primed, &pulled)? && containment_psd(&pulled, &s_primed)?,
    );

    let refused = matches!(
        decide_containment(&s_primed, &pulled),
        Err(Error::NotIndefinite { .. })
    );
    run.check(
        "proportionality decision refuses with NotIndefinite",
        refused,
    );

    match simdiag_psd(&s_primed, &pulled, tol) {
        Ok(res) => {
            let s5 = 5f64.sqrt();
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-9;
            run.check(
                "pair diagonalizes simultaneously with r-eigenvalues 6+2sqrt(5), 6-2sqrt(5)",
                res.residual <= tol
                    && close(res.r_diag[0], 6.0 + 2.0 * s5)
                    && close(res.r_diag[1], 6.0 - 2.0 * s5)
                    && res.r_diag[2] == 0.0,
            );
            run.put("simdiag", simdiag_to_json(&res));
        }
        Err(e) => run.check(format!("pair diagonalizes simultaneously ({e})"), false),
    }
    Ok(run)
}

fn semidefinite_trap(fx: &Fixtures, tol: f64) -> Result<FixtureRun, Failure> {
    let mut run = FixtureRun::new("semidefinite-trap");
    let q = fx.form("trap_q")?;
    let r = fx.form("trap_r")?;
    run.put("q_inertia", inertia_json(q.inertia()));
    run.put("r_inertia", inertia_json(r.inertia()));

    let k = kernel_basis(&q)?;
    run.put("q_kernel", subspace_to_json(&k));
    let v = [1, 1].map(Rational::from_int);
    run.check(
        "zero set of q is the line through (1,1)",
        k.dim() == 1 && k.contains(&v),
    );
    let rv = r.evaluate(&v)?;
    run.put("r_at_kernel", Value::String(rv.to_string()));
    run.check("r vanishes on that line", rv.is_zero());

    let refused = matches!(decide_containment(&q, &r), Err(Error::NotIndefinite { .. }));
    run.check(
        "proportionality decision refuses with NotIndefinite",
        refused,
    );
    let rejected = matches!(
        simdiag_psd(&q, &r, tol),
        Err(Error::NotSemidefinite { which: "r", .. })
    );
    run.check(
        "simultaneous diagonalization rejects r as not semidefinite",
        rejected,
    );

    // A diagonalizing basis for rank-one q must contain a multiple of v,
    // and r-orthogonality of v to the other basis vector together with
    // r(v) = 0 would force Rv = 0.
    let r_v = r.matrix().mul_vec(&v)?;
    run.put(
        "r_times_kernel",
        json!(r_v.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    );
    run.check(
        "no common diagonalizing basis: Rv is nonzero while v^T R v = 0",
        q.dim() == 2 && rv.is_zero() && r_v.iter().any(|x| !x.is_zero()),
    );
    Ok(run)
}

fn minkowski(fx: &Fixtures) -> Result<FixtureRun, Failure> {
    let mut run = FixtureRun::new("minkowski");
    let c = Rational::one();

    let boost = boost_from_triple(3, 4, 5, SpatialAxis::X)?;
    let rep = check_interval_invariance(&boost, &c)?;
    run.check(
        "boost from (3,4,5) preserves the interval with kappa = 1",
        rep.classification == TransformClass::IntervalPreserving
            && rep.kappa == Some(Rational::one()),
    );
    run.put("boost_3_4_5", report_to_json(&rep));

    let scaling = LinearTransform::scalar(4, Rational::from_int(2));
    let rep = check_interval_invariance(&scaling, &c)?;
    run.check(
        "L = 2I scales the interval with kappa = 4",
        rep.classification == TransformClass::ConformalScaling
            && rep.kappa == Some(Rational::from_int(4)),
    );
    run.put("scaling_2", report_to_json(&rep));

    let breaker = fx.transform("cone_breaker")?;
    let rep = check_interval_invariance(&breaker, &c)?;
    let q = qformkit_core::minkowski_form(&c, 3)?;
    let verified = match &rep.witness_event {
        Some(w) => verify_witness(&q, &rep.pulled_back_form, w)?,
        None => false,
    };
    let expected_event = [1, 1, 0, 0].map(Rational::from_int).to_vec();
    let is_expected = rep
        .witness_event
        .as_ref()
        .and_then(|w| w.rational_coords())
        .is_some_and(|v| v == expected_event);
    run.check(
        "diag(1,2,1,1) breaks the light cone at the verified event (1,1,0,0)",
        rep.classification == TransformClass::ConeBreaking && verified && is_expected,
    );
    run.put("cone_breaker", report_to_json(&rep));
    Ok(run)
}

pub fn run(dir: Option<&Path>, tol: f64) -> Result<Outcome, Failure> {
    let fx = Fixtures { dir };
    let runs = [
        substitution(&fx, tol)?,
        semidefinite_trap(&fx, tol)?,
        minkowski(&fx)?,
    ];

    let mut human = String::new();
    for r in &runs {
        let _ = writeln!(
            human,
            "{}: {}",
            r.name,
            if r.passed() { "PASS" } else { "FAIL" }
        );
        for (c, ok) in &r.checks {
            let _ = writeln!(human, "  [{}] {c}", if *ok { "ok" } else { "FAILED" });
        }
    }
    let failing = runs.iter().find(|r| !r.passed());
    let json = json!({
        "passed": failing.is_none(),
        "fixtures": runs.iter().map(FixtureRun::to_json).collect::<Vec<_>>(),
    });
    let mut out = Outcome::new(json, human, 0);
    if let Some(f) = failing {
        out.code = EXIT_REFUTED;
        out.note = Some(format!(
            "fixture {} failed: {}",
            f.name,
            f.first_failure().unwrap_or("")
        ));
    }
    Ok(out)
}
