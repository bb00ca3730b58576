use thiserror::Error;

use crate::containment::WitnessVector;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("mismatched radicands sqrt({left}) and sqrt({right})")]
    MismatchedRadicand { left: String, right: String },

    #[error("radicand must be positive, got {0}")]
    NonPositiveRadicand(String),

    #[error("matrix is not symmetric: entry ({row},{col}) differs from ({col},{row})")]
    NotSymmetric { row: usize, col: usize },

    #[error("form is not indefinite (inertia {inertia}); proportionality from zero-set containment needs a form taking both signs")]
    NotIndefinite { inertia: String },

    #[error("{which} form is not semidefinite (inertia {inertia})")]
    NotSemidefinite {
        which: &'static str,
        inertia: String,
    },

    #[error("no witness found in the null-cone family although the forms are not proportional")]
    NoWitnessFound,

    #[error("divisor must have degree 2, got {0}")]
    DegreeMismatch(usize),

    #[error("zero set of q is not contained in the zero set of r")]
    ContainmentFails(Option<Box<WitnessVector>>),

    #[error("eigen step residual {residual:e} exceeds tolerance {tol:e}")]
    NumericalFailure { residual: f64, tol: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("speed of light must be positive, got {0}")]
    InvalidSpeed(String),

    #[error("({a}, {b}, {h}) is not a Pythagorean triple")]
    NotPythagorean { a: i64, b: i64, h: i64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
