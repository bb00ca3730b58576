//! Zero-set containment for an indefinite quadratic form.
//!
//! For indefinite `q`, `q(x) = 0 ⇒ r(x) = 0` holds exactly when `r = αq`.
//! [`decide_containment`] returns either the constant `α` or a null-cone
//! point of `q` where `r` is nonzero. The point is built from a finite
//! family of cone vectors in the diagonalizing coordinates of `q`. If `r`
//! vanished on every member, each entry of `BᵀRB` would be pinned to `α`
//! times the matching diagonal entry, so some member always works.

use crate::error::{Error, Result};
use crate::form::{CongruenceDiagonalization, QuadraticForm};
use crate::scalar::{QuadExt, Rational};

/// A point with `q = 0` and `r ≠ 0`. Coordinates live in `Q(sqrt(t))` for
/// one shared radicand `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessVector {
    pub coords: Vec<QuadExt>,
    pub q_value: QuadExt,
    pub r_value: QuadExt,
}

impl WitnessVector {
    /// Evaluates both forms at `coords` and checks the witness property.
    pub fn new(q: &QuadraticForm, r: &QuadraticForm, coords: Vec<QuadExt>) -> Result<Self> {
        let q_value = q.evaluate_ext(&coords)?;
        let r_value = r.evaluate_ext(&coords)?;
        Ok(WitnessVector {
            coords,
            q_value,
            r_value,
        })
    }

    pub fn radicand(&self) -> Rational {
        self.coords
            .iter()
            .find(|c| !c.rad.is_zero())
            .or(self.coords.first())
            .map(|c| c.t().clone())
            .unwrap_or_else(Rational::one)
    }

    /// Rational coordinates, when the point is rational (every radical part
    /// vanishes or the radicand is a perfect square).
    pub fn rational_coords(&self) -> Option<Vec<Rational>> {
        self.coords.iter().map(QuadExt::to_rational).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContainmentVerdict {
    Proportional(Rational),
    Counterexample(WitnessVector),
}

impl ContainmentVerdict {
    pub fn alpha(&self) -> Option<&Rational> {
        match self {
            ContainmentVerdict::Proportional(a) => Some(a),
            ContainmentVerdict::Counterexample(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&WitnessVector> {
        match self {
            ContainmentVerdict::Proportional(_) => None,
            ContainmentVerdict::Counterexample(w) => Some(w),
        }
    }
}

pub(crate) fn require_indefinite(q: &QuadraticForm) -> Result<CongruenceDiagonalization> {
    let diag = q.congruence_diagonalize();
    if !diag.inertia.is_indefinite() {
        return Err(Error::NotIndefinite {
            inertia: diag.inertia.to_string(),
        });
    }
    Ok(diag)
}

/// Decides `Z_q ⊆ Z_r` for indefinite `q`.
pub fn decide_containment(q: &QuadraticForm, r: &QuadraticForm) -> Result<ContainmentVerdict> {
    if q.dim() != r.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.dim(),
            found: r.dim(),
        });
    }
    let diag = require_indefinite(q)?;
    let r_prime = r.matrix().congruent(&diag.basis)?;

    // first positive index is 0 in canonical order
    let alpha = &r_prime[(0, 0)] / &diag.diag[0];
    let n = q.dim();
    let proportional = (0..n).all(|i| {
        (0..n).all(|j| {
            if i == j {
                r_prime[(i, i)] == &alpha * &diag.diag[i]
            } else {
                r_prime[(i, j)].is_zero()
            }
        })
    });
    if proportional {
        debug_assert_eq!(r, &q.scale(&alpha));
        return Ok(ContainmentVerdict::Proportional(alpha));
    }
    construct_witness(&diag, r).map(ContainmentVerdict::Counterexample)
}

/// One member of the witness family, in diagonal coordinates: a list of
/// `(index, rational coefficient, carries √t)` entries plus the radicand.
struct Candidate {
    t: Rational,
    entries: Vec<(usize, Rational, bool)>,
}

impl Candidate {
    fn rational(entries: Vec<(usize, i64)>) -> Self {
        Candidate {
            t: Rational::one(),
            entries: entries
                .into_iter()
                .map(|(i, c)| (i, Rational::from_int(c), false))
                .collect(),
        }
    }

    fn to_vector(&self, n: usize) -> Vec<QuadExt> {
        let mut y = vec![QuadExt::rational(Rational::zero(), &self.t); n];
        for (i, c, radical) in &self.entries {
            y[*i] = if *radical {
                QuadExt::new(Rational::zero(), c.clone(), self.t.clone())
                    .expect("family radicands are positive")
            } else {
                QuadExt::rational(c.clone(), &self.t)
            };
        }
        y
    }
}

const SIGNS: [i64; 2] = [1, -1];

/// The fixed, ordered witness family for a diagonalization. Every member
/// is a null vector of `diag(d)`.
fn witness_family(diag: &CongruenceDiagonalization) -> impl Iterator<Item = Candidate> + '_ {
    let d = &diag.diag;
    let pos = diag.positive_indices();
    let neg = diag.negative_indices();
    let zero = diag.zero_indices();
    // s² = d_p / (−d_n)
    let ratio = move |p: usize, n: usize| -(&d[p] / &d[n]);

    // (a) e_p ± s e_n
    let a = {
        let neg = neg.clone();
        pos.clone().flat_map(move |p| {
            let neg = neg.clone();
            neg.flat_map(move |n| {
                SIGNS.into_iter().map(move |sg| Candidate {
                    t: ratio(p, n),
                    entries: vec![
                        (p, Rational::one(), false),
                        (n, Rational::from_int(sg), true),
                    ],
                })
            })
        })
    };

    // (b) e_z
    let b = zero.clone().map(|z| Candidate::rational(vec![(z, 1)]));

    // (c) ±e_p + s e_n + e_z
    let c = {
        let (neg, zero) = (neg.clone(), zero.clone());
        pos.clone().flat_map(move |p| {
            let zero = zero.clone();
            neg.clone().flat_map(move |n| {
                zero.clone().flat_map(move |z| {
                    SIGNS.into_iter().map(move |sg| Candidate {
                        t: ratio(p, n),
                        entries: vec![
                            (p, Rational::from_int(sg), false),
                            (n, Rational::one(), true),
                            (z, Rational::one(), false),
                        ],
                    })
                })
            })
        })
    };

    // (d) e_z ± e_z'
    let dd = {
        let zero2 = zero.clone();
        zero.clone().flat_map(move |z| {
            ((z + 1)..zero2.end).flat_map(move |z2| {
                SIGNS
                    .into_iter()
                    .map(move |sg| Candidate::rational(vec![(z, 1), (z2, sg)]))
            })
        })
    };

    // (e) σ₁e_i + σ₂e_i' + s e_j for a same-sign pair (i, i') and opposite
    // index j, with s² = (d_i + d_i') / (−d_j)
    let pair = move |same: std::ops::Range<usize>, other: std::ops::Range<usize>| {
        let same2 = same.clone();
        same.flat_map(move |i| {
            let other = other.clone();
            ((i + 1)..same2.end).flat_map(move |i2| {
                other.clone().flat_map(move |j| {
                    let t = -((&d[i] + &d[i2]) / &d[j]);
                    SIGNS.into_iter().flat_map(move |s1| {
                        let t = t.clone();
                        SIGNS.into_iter().map(move |s2| Candidate {
                            t: t.clone(),
                            entries: vec![
                                (i, Rational::from_int(s1), false),
                                (i2, Rational::from_int(s2), false),
                                (j, Rational::one(), true),
                            ],
                        })
                    })
                })
            })
        })
    };
    let e = pair(pos.clone(), neg.clone()).chain(pair(neg, pos));

    a.chain(b).chain(c).chain(dd).chain(e)
}

/// Returns the first family member on which `r` is nonzero, mapped back to
/// the original coordinates through the diagonalizing basis.
pub fn construct_witness(
    diag: &CongruenceDiagonalization,
    r: &QuadraticForm,
) -> Result<WitnessVector> {
    let n = diag.dim();
    if r.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: r.dim(),
        });
    }
    let q_diag = QuadraticForm::diagonal(&diag.diag);
    for cand in witness_family(diag) {
        let y = cand.to_vector(n);
        debug_assert!(q_diag.evaluate_ext(&y)?.is_zero());
        let x = diag.to_original(&y)?;
        let r_value = r.evaluate_ext(&x)?;
        if !r_value.is_zero() {
            let q_value = q_diag.evaluate_ext(&y)?;
            return Ok(WitnessVector {
                coords: x,
                q_value,
                r_value,
            });
        }
    }
    Err(Error::NoWitnessFound)
}

/// Independent certificate check: recomputes both evaluations exactly.
pub fn verify_witness(q: &QuadraticForm, r: &QuadraticForm, w: &WitnessVector) -> Result<bool> {
    if q.dim() != r.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.dim(),
            found: r.dim(),
        });
    }
    let qv = q.evaluate_ext(&w.coords)?;
    let rv = r.evaluate_ext(&w.coords)?;
    Ok(qv.is_zero() && !rv.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::{Inertia, LinearTransform};
    use crate::matrix::Matrix;

    fn ri(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn form(rows: &[&[i64]]) -> QuadraticForm {
        QuadraticForm::from_i64_rows(rows).unwrap()
    }

    fn qe_rat(xs: &[i64], t: i64) -> Vec<QuadExt> {
        xs.iter()
            .map(|&x| QuadExt::rational(ri(x), &ri(t)))
            .collect()
    }

    fn values(w: &WitnessVector) -> Vec<Rational> {
        w.rational_coords().expect("rational witness")
    }

    #[test]
    fn minkowski_scaling_is_proportional() {
        let q = QuadraticForm::diagonal(&[ri(-1), ri(1), ri(1), ri(1)]);
        let r = q
            .apply_transform(&LinearTransform::scalar(4, ri(2)))
            .unwrap();
        assert_eq!(
            decide_containment(&q, &r).unwrap(),
            ContainmentVerdict::Proportional(ri(4))
        );
    }

    #[test]
    fn identical_forms() {
        let q = form(&[&[1, 0], &[0, -1]]);
        assert_eq!(
            decide_containment(&q, &q).unwrap(),
            ContainmentVerdict::Proportional(ri(1))
        );
    }

    #[test]
    fn sum_of_squares_is_refuted_at_diagonal_point() {
        let q = form(&[&[1, 0], &[0, -1]]);
        let r = form(&[&[1, 0], &[0, 1]]);
        let v = decide_containment(&q, &r).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(values(w), vec![ri(1), ri(1)]);
        assert!(w.q_value.is_zero());
        assert_eq!(w.r_value.to_rational(), Some(ri(2)));
        assert!(verify_witness(&q, &r, w).unwrap());
    }

    #[test]
    fn square_of_difference_is_refuted_on_other_branch() {
        let q = form(&[&[1, 0], &[0, -1]]);
        let r = form(&[&[1, -1], &[-1, 1]]);
        let v = decide_containment(&q, &r).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(values(w), vec![ri(1), ri(-1)]);
        assert_eq!(w.r_value.to_rational(), Some(ri(4)));
    }

    #[test]
    fn semidefinite_q_is_outside_hypothesis() {
        let q = form(&[&[1, -1], &[-1, 1]]);
        let r = form(&[&[1, 0], &[0, -1]]);
        assert!(matches!(
            decide_containment(&q, &r),
            Err(Error::NotIndefinite { .. })
        ));
        assert!(matches!(
            decide_containment(&form(&[&[1, 0], &[0, -1]]), &QuadraticForm::zero(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    fn diag_only(d: Vec<Rational>) -> CongruenceDiagonalization {
        let n = d.len();
        let inertia = Inertia {
            positive: d.iter().filter(|x| x.is_positive()).count(),
            negative: d.iter().filter(|x| x.is_negative()).count(),
            zero: d.iter().filter(|x| x.is_zero()).count(),
        };
        CongruenceDiagonalization {
            basis: Matrix::identity(n),
            diag: d,
            inertia,
        }
    }

    #[test]
    fn family_member_a_on_unit_hyperbola() {
        let d = diag_only(vec![ri(1), ri(-1)]);
        let w = construct_witness(&d, &form(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(values(&w), vec![ri(1), ri(1)]);
        assert_eq!(w.r_value.to_rational(), Some(ri(2)));
    }

    #[test]
    fn family_member_a_with_perfect_square_radicand() {
        let d = diag_only(vec![ri(2), Rational::new(-1, 2)]);
        let r = QuadraticForm::new(
            Matrix::from_rows(vec![vec![ri(2), ri(1)], vec![ri(1), Rational::new(-1, 2)]]).unwrap(),
        )
        .unwrap();
        let w = construct_witness(&d, &r).unwrap();
        assert_eq!(w.radicand(), ri(4));
        assert_eq!(values(&w), vec![ri(1), ri(2)]);
        // 2 + 4·(−1/2) + 2·2·1
        assert_eq!(w.r_value.to_rational(), Some(ri(4)));
        let q = QuadraticForm::diagonal(&d.diag);
        assert!(verify_witness(&q, &r, &w).unwrap());
    }

    #[test]
    fn family_member_b_on_zero_block() {
        let d = diag_only(vec![ri(1), ri(-1), ri(0)]);
        let r = form(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 5]]);
        let w = construct_witness(&d, &r).unwrap();
        assert_eq!(values(&w), vec![ri(0), ri(0), ri(1)]);
        assert_eq!(w.r_value.to_rational(), Some(ri(5)));
    }

    #[test]
    fn family_member_c_d_e_each_reachable() {
        let d = diag_only(vec![ri(1), ri(-1), ri(0)]);
        // only R'_{pz} deviates
        let r = form(&[&[1, 0, 1], &[0, -1, 0], &[1, 0, 0]]);
        let w = construct_witness(&d, &r).unwrap();
        assert_eq!(values(&w), vec![ri(1), ri(1), ri(1)]);

        let d = diag_only(vec![ri(1), ri(-1), ri(0), ri(0)]);
        // only R'_{zz'} deviates
        let r = form(&[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 0, 3], &[0, 0, 3, 0]]);
        let w = construct_witness(&d, &r).unwrap();
        assert_eq!(values(&w), vec![ri(0), ri(0), ri(1), ri(1)]);

        let d = diag_only(vec![ri(1), ri(1), ri(-1)]);
        // only R'_{pp'} deviates
        let r = form(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, -1]]);
        let w = construct_witness(&d, &r).unwrap();
        assert_eq!(w.radicand(), ri(2));
        assert!(verify_witness(&QuadraticForm::diagonal(&d.diag), &r, &w).unwrap());

        let d = diag_only(vec![ri(1), ri(-1), ri(-3)]);
        // only R'_{nn'} deviates
        let r = form(&[&[1, 0, 0], &[0, -1, 2], &[0, 2, -3]]);
        let w = construct_witness(&d, &r).unwrap();
        assert_eq!(w.radicand(), ri(4));
        assert!(verify_witness(&QuadraticForm::diagonal(&d.diag), &r, &w).unwrap());
    }

    #[test]
    fn proportional_input_exhausts_family() {
        let d = diag_only(vec![ri(1), ri(-1), ri(0)]);
        let r = form(&[&[3, 0, 0], &[0, -3, 0], &[0, 0, 0]]);
        assert!(matches!(
            construct_witness(&d, &r),
            Err(Error::NoWitnessFound)
        ));
    }

    #[test]
    fn verify_witness_examples() {
        let q = form(&[&[1, 0], &[0, -1]]);
        let w = WitnessVector::new(&q, &form(&[&[1, 0], &[0, 1]]), qe_rat(&[1, 1], 1)).unwrap();
        assert!(verify_witness(&q, &form(&[&[1, 0], &[0, 1]]), &w).unwrap());
        assert!(!verify_witness(&q, &q, &w).unwrap());
        let off = QuadraticForm::zero(3);
        assert!(verify_witness(&q, &off, &w).is_err());
    }

    #[test]
    fn proportional_verdict_is_symmetric() {
        let q = form(&[&[2, 1, 0], &[1, -1, 3], &[0, 3, 0]]);
        let r = q.scale(&Rational::new(-3, 7));
        let v = decide_containment(&q, &r).unwrap();
        assert_eq!(v.alpha(), Some(&Rational::new(-3, 7)));
        let back = decide_containment(&r, &q).unwrap();
        assert_eq!(back.alpha(), Some(&Rational::new(-7, 3)));
    }
}
