//! Light-cone preservation of linear coordinate changes.
//!
//! Events are ordered `(t, x, y, z)`. The interval form is
//! `diag(−c², 1, …, 1)`. A transform `L` preserves the light cone exactly
//! when `LᵀQL = κQ`; the report carries `κ` or an event on the light cone
//! that `L` maps off it.

use std::fmt;

use crate::containment::{decide_containment, ContainmentVerdict, WitnessVector};
use crate::error::{Error, Result};
use crate::form::{LinearTransform, QuadraticForm};
use crate::matrix::Matrix;
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformClass {
    /// κ = 1.
    IntervalPreserving,
    /// κ > 0, κ ≠ 1.
    ConformalScaling,
    /// κ < 0. Only possible for one spatial dimension, where swapping the
    /// roles of `ct` and `x` negates the interval.
    SignReversing,
    /// Some light-like event is mapped off the light cone.
    ConeBreaking,
    /// κ = 0: `L` collapses everything onto the light cone.
    Degenerate,
}

impl TransformClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            TransformClass::IntervalPreserving => "interval-preserving",
            TransformClass::ConformalScaling => "conformal-scaling",
            TransformClass::SignReversing => "sign-reversing",
            TransformClass::ConeBreaking => "cone-breaking",
            TransformClass::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for TransformClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformReport {
    /// The proportionality factor between the pulled-back and original
    /// interval forms.
    pub kappa: Option<Rational>,
    pub classification: TransformClass,
    pub witness_event: Option<WitnessVector>,
    pub pulled_back_form: QuadraticForm,
}

/// `diag(−c², 1, …, 1)` on `1 + dim_space` coordinates.
pub fn minkowski_form(c: &Rational, dim_space: usize) -> Result<QuadraticForm> {
    if !c.is_positive() {
        return Err(Error::InvalidSpeed(c.to_string()));
    }
    if dim_space == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    let mut d = vec![Rational::one(); dim_space + 1];
    d[0] = -c.square();
    Ok(QuadraticForm::diagonal(&d))
}

/// Pulls the interval back through `L` and decides proportionality.
/// The spatial dimension is taken from `L`.
pub fn check_interval_invariance(l: &LinearTransform, c: &Rational) -> Result<TransformReport> {
    if l.dim() < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: l.dim(),
        });
    }
    let q = minkowski_form(c, l.dim() - 1)?;
    let pulled = q.apply_transform(l)?;
    let report = match decide_containment(&q, &pulled)? {
        ContainmentVerdict::Proportional(kappa) => {
            let classification = if kappa.is_one() {
                TransformClass::IntervalPreserving
            } else if kappa.is_zero() {
                TransformClass::Degenerate
            } else if kappa.is_positive() {
                TransformClass::ConformalScaling
            } else {
                TransformClass::SignReversing
            };
            TransformReport {
                kappa: Some(kappa),
                classification,
                witness_event: None,
                pulled_back_form: pulled,
            }
        }
        ContainmentVerdict::Counterexample(w) => TransformReport {
            kappa: None,
            classification: TransformClass::ConeBreaking,
            witness_event: Some(w),
            pulled_back_form: pulled,
        },
    };
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpatialAxis {
    X,
    Y,
    Z,
}

impl SpatialAxis {
    fn index(self) -> usize {
        match self {
            SpatialAxis::X => 1,
            SpatialAxis::Y => 2,
            SpatialAxis::Z => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpatialPlane {
    XY,
    XZ,
    YZ,
}

impl SpatialPlane {
    fn indices(self) -> (usize, usize) {
        match self {
            SpatialPlane::XY => (1, 2),
            SpatialPlane::XZ => (1, 3),
            SpatialPlane::YZ => (2, 3),
        }
    }
}

fn check_triple(a: i64, b: i64, h: i64) -> Result<()> {
    let ok =
        h > 0 && (a as i128) * (a as i128) + (b as i128) * (b as i128) == (h as i128) * (h as i128);
    if ok {
        Ok(())
    } else {
        Err(Error::NotPythagorean { a, b, h })
    }
}

/// Boost with `β = a/h`, `γ = h/b` along `axis`, in units with `c = 1`.
pub fn boost_from_triple(a: i64, b: i64, h: i64, axis: SpatialAxis) -> Result<LinearTransform> {
    boost_from_triple_with_speed(a, b, h, axis, &Rational::one())
}

/// `t' = γt − (γβ/c)x`, `x' = −γβc·t + γx` on the `(t, axis)` block.
pub fn boost_from_triple_with_speed(
    a: i64,
    b: i64,
    h: i64,
    axis: SpatialAxis,
    c: &Rational,
) -> Result<LinearTransform> {
    if a <= 0 || b <= 0 {
        return Err(Error::NotPythagorean { a, b, h });
    }
    check_triple(a, b, h)?;
    if !c.is_positive() {
        return Err(Error::InvalidSpeed(c.to_string()));
    }
    let gamma = Rational::new(h, b);
    let gamma_beta = Rational::new(a, b);
    let k = axis.index();
    let mut m = Matrix::identity(4);
    m[(0, 0)] = gamma.clone();
    m[(k, k)] = gamma;
    m[(0, k)] = -(&gamma_beta / c);
    m[(k, 0)] = -(&gamma_beta * c);
    LinearTransform::new(m)
}

/// Rotation by the angle with `cos = b/h`, `sin = a/h` in `plane`.
pub fn rotation_from_triple(
    a: i64,
    b: i64,
    h: i64,
    plane: SpatialPlane,
) -> Result<LinearTransform> {
    check_triple(a, b, h)?;
    let cos = Rational::new(b, h);
    let sin = Rational::new(a, h);
    let (i, j) = plane.indices();
    let mut m = Matrix::identity(4);
    m[(i, i)] = cos.clone();
    m[(j, j)] = cos;
    m[(i, j)] = -&sin;
    m[(j, i)] = sin;
    LinearTransform::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::containment::verify_witness;
    use crate::form::Inertia;

    fn ri(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn diag_transform(d: &[i64]) -> LinearTransform {
        LinearTransform::new(Matrix::diagonal(
            &d.iter().map(|&x| ri(x)).collect::<Vec<_>>(),
        ))
        .unwrap()
    }

    #[test]
    fn minkowski_examples() {
        let q = minkowski_form(&ri(1), 3).unwrap();
        assert_eq!(q, QuadraticForm::diagonal(&[ri(-1), ri(1), ri(1), ri(1)]));
        assert_eq!(
            q.inertia(),
            Inertia {
                positive: 3,
                negative: 1,
                zero: 0
            }
        );
        assert_eq!(
            minkowski_form(&ri(3), 3).unwrap(),
            QuadraticForm::diagonal(&[ri(-9), ri(1), ri(1), ri(1)])
        );
        assert_eq!(
            minkowski_form(&ri(1), 1).unwrap(),
            QuadraticForm::diagonal(&[ri(-1), ri(1)])
        );
        assert!(matches!(
            minkowski_form(&ri(0), 3),
            Err(Error::InvalidSpeed(_))
        ));
        assert!(matches!(
            minkowski_form(&ri(-2), 3),
            Err(Error::InvalidSpeed(_))
        ));
    }

    #[test]
    fn boost_345_entries() {
        let l = boost_from_triple(3, 4, 5, SpatialAxis::X).unwrap();
        let m = l.matrix();
        assert_eq!(m[(0, 0)], Rational::new(5, 4));
        assert_eq!(m[(0, 1)], Rational::new(-3, 4));
        assert_eq!(m[(1, 0)], Rational::new(-3, 4));
        assert_eq!(m[(1, 1)], Rational::new(5, 4));
        assert_eq!(m[(2, 2)], ri(1));
        assert_eq!(m[(3, 3)], ri(1));
        let report = check_interval_invariance(&l, &ri(1)).unwrap();
        assert_eq!(report.kappa, Some(ri(1)));
        assert_eq!(report.classification, TransformClass::IntervalPreserving);
    }

    #[test]
    fn boost_5_12_13_on_y() {
        let l = boost_from_triple(5, 12, 13, SpatialAxis::Y).unwrap();
        assert_eq!(l.matrix()[(0, 0)], Rational::new(13, 12));
        assert_eq!(l.matrix()[(2, 0)], Rational::new(-5, 12));
        assert_eq!(
            check_interval_invariance(&l, &ri(1)).unwrap().kappa,
            Some(ri(1))
        );
    }

    #[test]
    fn boost_respects_speed_of_light() {
        let c = Rational::new(3, 2);
        let l = boost_from_triple_with_speed(8, 15, 17, SpatialAxis::Z, &c).unwrap();
        assert_eq!(
            check_interval_invariance(&l, &c).unwrap().kappa,
            Some(ri(1))
        );
        // the c = 1 boost does not preserve the c = 3/2 cone
        let l1 = boost_from_triple(8, 15, 17, SpatialAxis::Z).unwrap();
        let report = check_interval_invariance(&l1, &c).unwrap();
        assert_eq!(report.classification, TransformClass::ConeBreaking);
    }

    #[test]
    fn non_pythagorean_rejected() {
        assert!(matches!(
            boost_from_triple(1, 1, 1, SpatialAxis::X),
            Err(Error::NotPythagorean { .. })
        ));
        assert!(matches!(
            rotation_from_triple(2, 2, 3, SpatialPlane::XY),
            Err(Error::NotPythagorean { .. })
        ));
        // a zero leg is a rotation by zero but not a boost
        assert!(boost_from_triple(0, 1, 1, SpatialAxis::X).is_err());
    }

    #[test]
    fn rotations_are_orthogonal() {
        let r = rotation_from_triple(3, 4, 5, SpatialPlane::XY).unwrap();
        assert_eq!(r.matrix()[(1, 1)], Rational::new(4, 5));
        assert_eq!(r.matrix()[(2, 1)], Rational::new(3, 5));
        let rtr = r.matrix().transpose().checked_mul(r.matrix()).unwrap();
        assert_eq!(rtr, Matrix::identity(4));
        assert_eq!(
            rotation_from_triple(0, 1, 1, SpatialPlane::XY).unwrap(),
            LinearTransform::identity(4)
        );

        let composed = boost_from_triple(3, 4, 5, SpatialAxis::X)
            .unwrap()
            .compose(&r)
            .unwrap();
        assert_eq!(
            check_interval_invariance(&composed, &ri(1)).unwrap().kappa,
            Some(ri(1))
        );
    }

    #[test]
    fn scaling_and_cone_breaking() {
        let report = check_interval_invariance(&LinearTransform::scalar(4, ri(2)), &ri(1)).unwrap();
        assert_eq!(report.kappa, Some(ri(4)));
        assert_eq!(report.classification, TransformClass::ConformalScaling);

        let l = diag_transform(&[1, 2, 1, 1]);
        let report = check_interval_invariance(&l, &ri(1)).unwrap();
        assert_eq!(report.classification, TransformClass::ConeBreaking);
        let w = report.witness_event.as_ref().unwrap();
        assert_eq!(
            w.rational_coords().unwrap(),
            vec![ri(1), ri(1), ri(0), ri(0)]
        );
        assert_eq!(w.r_value.to_rational(), Some(ri(3)));
        let q = minkowski_form(&ri(1), 3).unwrap();
        assert!(verify_witness(&q, &report.pulled_back_form, w).unwrap());
    }

    #[test]
    fn degenerate_and_sign_reversing() {
        let zero = LinearTransform::scalar(4, ri(0));
        let report = check_interval_invariance(&zero, &ri(1)).unwrap();
        assert_eq!(report.kappa, Some(ri(0)));
        assert_eq!(report.classification, TransformClass::Degenerate);

        let swap =
            LinearTransform::new(Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]).unwrap()).unwrap();
        let report = check_interval_invariance(&swap, &ri(1)).unwrap();
        assert_eq!(report.kappa, Some(ri(-1)));
        assert_eq!(report.classification, TransformClass::SignReversing);
    }

    #[test]
    fn identity_pulls_back_to_minkowski() {
        let report = check_interval_invariance(&LinearTransform::identity(4), &ri(2)).unwrap();
        assert_eq!(report.pulled_back_form, minkowski_form(&ri(2), 3).unwrap());
        assert!(check_interval_invariance(&LinearTransform::identity(1), &ri(1)).is_err());
    }

    #[test]
    fn kappa_is_multiplicative() {
        let a = LinearTransform::scalar(4, ri(3));
        let b = boost_from_triple(5, 12, 13, SpatialAxis::Z).unwrap();
        let c = LinearTransform::scalar(4, Rational::new(1, 2));
        for (l1, l2) in [(&a, &b), (&a, &c), (&c, &b), (&b, &b)] {
            let k1 = check_interval_invariance(l1, &ri(1))
                .unwrap()
                .kappa
                .unwrap();
            let k2 = check_interval_invariance(l2, &ri(1))
                .unwrap()
                .kappa
                .unwrap();
            let k12 = check_interval_invariance(&l1.compose(l2).unwrap(), &ri(1))
                .unwrap()
                .kappa
                .unwrap();
            assert_eq!(k12, &k1 * &k2);
        }
    }
}
