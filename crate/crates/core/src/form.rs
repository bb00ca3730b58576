//! Real quadratic forms with rational coefficients: evaluation, congruence
//! diagonalization, inertia and classification.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{QuadExt, Rational};

/// A quadratic form `q(x) = xᵀQx` given by an exactly symmetric matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    matrix: Matrix,
}

/// Positive, negative and zero counts of any congruence diagonalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }

    pub fn is_indefinite(&self) -> bool {
        self.positive > 0 && self.negative > 0
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positive, self.negative, self.zero)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Indefinite,
    PositiveDefinite,
    NegativeDefinite,
    PositiveSemidefiniteDegenerate,
    NegativeSemidefiniteDegenerate,
    Zero,
}

impl Classification {
    pub fn from_inertia(inertia: Inertia) -> Self {
        let n = inertia.dim();
        match (inertia.positive, inertia.negative) {
            (0, 0) => Classification::Zero,
            (p, m) if p > 0 && m > 0 => Classification::Indefinite,
            (p, _) if p == n => Classification::PositiveDefinite,
            (_, m) if m == n => Classification::NegativeDefinite,
            (_, 0) => Classification::PositiveSemidefiniteDegenerate,
            _ => Classification::NegativeSemidefiniteDegenerate,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Indefinite => "indefinite",
            Classification::PositiveDefinite => "positive-definite",
            Classification::NegativeDefinite => "negative-definite",
            Classification::PositiveSemidefiniteDegenerate => "positive-semidefinite-degenerate",
            Classification::NegativeSemidefiniteDegenerate => "negative-semidefinite-degenerate",
            Classification::Zero => "zero",
        }
    }

    /// True for every class except indefinite. The zero form counts as
    /// semidefinite of both orientations.
    pub fn is_semidefinite(&self) -> bool {
        !matches!(self, Classification::Indefinite)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An invertible basis `B` (as columns) with `BᵀQB = diag(d)`, ordered
/// positive entries first, then negative, then zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceDiagonalization {
    pub basis: Matrix,
    pub diag: Vec<Rational>,
    pub inertia: Inertia,
}

impl CongruenceDiagonalization {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn positive_indices(&self) -> std::ops::Range<usize> {
        0..self.inertia.positive
    }

    pub fn negative_indices(&self) -> std::ops::Range<usize> {
        self.inertia.positive..self.inertia.positive + self.inertia.negative
    }

    pub fn zero_indices(&self) -> std::ops::Range<usize> {
        self.inertia.positive + self.inertia.negative..self.dim()
    }

    /// `B·y` for a vector of diagonal coordinates.
    pub fn to_original(&self, y: &[QuadExt]) -> Result<Vec<QuadExt>> {
        mat_vec_ext(&self.basis, y)
    }
}

/// A linear change of coordinates `x' = Lx`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearTransform {
    matrix: Matrix,
}

impl LinearTransform {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        Ok(LinearTransform { matrix })
    }

    pub fn identity(n: usize) -> Self {
        LinearTransform {
            matrix: Matrix::identity(n),
        }
    }

    pub fn scalar(n: usize, k: Rational) -> Self {
        LinearTransform {
            matrix: Matrix::identity(n).scale(&k),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `self ∘ other`, i.e. the matrix product `self · other`.
    pub fn compose(&self, other: &LinearTransform) -> Result<LinearTransform> {
        Ok(LinearTransform {
            matrix: self.matrix.checked_mul(&other.matrix)?,
        })
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        self.matrix.mul_vec(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix
            .determinant()
            .map(|d| !d.is_zero())
            .unwrap_or(false)
    }
}

impl fmt::Debug for LinearTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

impl QuadraticForm {
    /// Rejects non-square or non-symmetric matrices; nothing is symmetrized.
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        if let Some((row, col)) = matrix.asymmetry() {
            return Err(Error::NotSymmetric { row, col });
        }
        Ok(QuadraticForm { matrix })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        QuadraticForm::new(Matrix::from_i64_rows(rows)?)
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        QuadraticForm {
            matrix: Matrix::diagonal(values),
        }
    }

    pub fn zero(n: usize) -> Self {
        QuadraticForm {
            matrix: Matrix::zeros(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.matrix[(i, j)]
    }

    pub fn scale(&self, k: &Rational) -> QuadraticForm {
        QuadraticForm {
            matrix: self.matrix.scale(k),
        }
    }

    pub fn negate(&self) -> QuadraticForm {
        self.scale(&Rational::from_int(-1))
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: len,
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        self.bilinear(x, x)
    }

    /// `q̃(x, y) = Σ Qᵢⱼ xᵢ yⱼ`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        let qy = self.matrix.mul_vec(y)?;
        Ok(x.iter().zip(&qy).map(|(a, b)| a * b).sum())
    }

    /// Evaluation over `Q(sqrt(t))`, computed directly in extension
    /// arithmetic. All entries with a radical part must share one radicand.
    pub fn evaluate_ext(&self, x: &[QuadExt]) -> Result<QuadExt> {
        self.bilinear_ext(x, x)
    }

    pub fn bilinear_ext(&self, x: &[QuadExt], y: &[QuadExt]) -> Result<QuadExt> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        let qy = mat_vec_ext(&self.matrix, y)?;
        let t = shared_radicand(x.iter().chain(y))?;
        let mut acc = QuadExt::rational(Rational::zero(), &t);
        for (a, b) in x.iter().zip(&qy) {
            acc = acc.try_add(&a.try_mul(b)?)?;
        }
        Ok(acc)
    }

    /// The pullback `x ↦ q(Lx)`, with matrix `LᵀQL`.
    pub fn apply_transform(&self, l: &LinearTransform) -> Result<QuadraticForm> {
        self.check_dim(l.dim())?;
        Ok(QuadraticForm {
            matrix: self.matrix.congruent(l.matrix())?,
        })
    }

    pub fn congruence_diagonalize(&self) -> CongruenceDiagonalization {
        congruence_diagonalize(self)
    }

    pub fn inertia(&self) -> Inertia {
        self.congruence_diagonalize().inertia
    }

    pub fn classify(&self) -> Classification {
        Classification::from_inertia(self.inertia())
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

fn shared_radicand<'a>(xs: impl Iterator<Item = &'a QuadExt> + Clone) -> Result<Rational> {
    let mut t: Option<&Rational> = None;
    for x in xs.clone() {
        if x.rad.is_zero() {
            continue;
        }
        match t {
            None => t = Some(x.t()),
            Some(t0) if t0 == x.t() => {}
            Some(t0) => {
                return Err(Error::MismatchedRadicand {
                    left: t0.to_string(),
                    right: x.t().to_string(),
                })
            }
        }
    }
    Ok(t.cloned()
        .or_else(|| xs.into_iter().next().map(|x| x.t().clone()))
        .unwrap_or_else(Rational::one))
}

pub(crate) fn mat_vec_ext(m: &Matrix, v: &[QuadExt]) -> Result<Vec<QuadExt>> {
    if v.len() != m.cols() {
        return Err(Error::DimensionMismatch {
            expected: m.cols(),
            found: v.len(),
        });
    }
    let t = shared_radicand(v.iter())?;
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .try_fold(QuadExt::rational(Rational::zero(), &t), |acc, (a, x)| {
                    acc.try_add(&x.scale(a))
                })
        })
        .collect()
}

/// Symmetric Gaussian elimination: returns `B` with `BᵀQB` diagonal.
///
/// A zero pivot is replaced by a later nonzero diagonal entry when one
/// exists. Otherwise, if some `Qᵢⱼ ≠ 0`, the pivot vector becomes
/// `bᵢ + bⱼ` (or `bᵢ - bⱼ` if that would cancel) so the new pivot is `±2Qᵢⱼ`.
/// A remaining zero row is left in place. The result is permuted to
/// positive / negative / zero order, stably.
pub fn congruence_diagonalize(q: &QuadraticForm) -> CongruenceDiagonalization {
    let n = q.dim();
    let mut a = q.matrix.clone();
    let mut b = Matrix::identity(n);

    for i in 0..n {
        if a[(i, i)].is_zero() {
            if let Some(j) = ((i + 1)..n).find(|&j| !a[(j, j)].is_zero()) {
                a.swap_rows(i, j);
                a.swap_cols(i, j);
                b.swap_cols(i, j);
            } else if let Some(j) = ((i + 1)..n).find(|&j| !a[(i, j)].is_zero()) {
                let two_qij = &a[(i, j)] + &a[(i, j)];
                let sign = if (&a[(i, i)] + &a[(j, j)] + &two_qij).is_zero() {
                    Rational::from_int(-1)
                } else {
                    Rational::one()
                };
                add_basis_vector(&mut a, &mut b, i, j, &sign);
            } else {
                continue;
            }
        }
        let pivot = a[(i, i)].clone();
        for j in (i + 1)..n {
            if a[(i, j)].is_zero() {
                continue;
            }
            let f = -(&a[(i, j)] / &pivot);
            add_basis_vector(&mut a, &mut b, j, i, &f);
        }
    }

    let diag: Vec<Rational> = (0..n).map(|i| a[(i, i)].clone()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| match diag[i].signum() {
        1 => 0,
        -1 => 1,
        _ => 2,
    });
    let basis = Matrix::from_columns(n, &order.iter().map(|&i| b.column(i)).collect::<Vec<_>>());
    let diag: Vec<Rational> = order.iter().map(|&i| diag[i].clone()).collect();
    let inertia = Inertia {
        positive: diag.iter().filter(|d| d.is_positive()).count(),
        negative: diag.iter().filter(|d| d.is_negative()).count(),
        zero: diag.iter().filter(|d| d.is_zero()).count(),
    };
    CongruenceDiagonalization {
        basis,
        diag,
        inertia,
    }
}

/// `b_target ← b_target + f·b_source`, updating the Gram matrix `a` by the
/// matching row and column operation.
fn add_basis_vector(a: &mut Matrix, b: &mut Matrix, target: usize, source: usize, f: &Rational) {
    let n = a.rows();
    for k in 0..n {
        let v = &a[(target, k)] + f * &a[(source, k)];
        a[(target, k)] = v;
    }
    for k in 0..n {
        let v = &a[(k, target)] + f * &a[(k, source)];
        a[(k, target)] = v;
    }
    for k in 0..n {
        let v = &b[(k, target)] + f * &b[(k, source)];
        b[(k, target)] = v;
    }
}
