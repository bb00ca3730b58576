//! Simultaneous diagonalization of pairs `(q, r)` with `Z_q ⊆ Z_r`.
//!
//! For semidefinite forms the zero set is the matrix kernel, so containment
//! is decided exactly by kernel inclusion. The diagonalizing basis itself is
//! computed in floating point, since its eigenvalues are generally
//! irrational of unbounded degree.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::containment::{decide_containment, ContainmentVerdict, WitnessVector};
use crate::error::{Error, Result};
use crate::form::{Classification, QuadraticForm};
use crate::matrix::{primitive_integer_vector, Matrix};
use crate::scalar::{QuadExt, Rational};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Linearly independent rational vectors in `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub dim_ambient: usize,
    pub vectors: Vec<Vec<Rational>>,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn as_matrix(&self) -> Matrix {
        Matrix::from_columns(self.dim_ambient, &self.vectors)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut cols = self.vectors.clone();
        cols.push(v.to_vec());
        Matrix::from_columns(self.dim_ambient, &cols).rank() == self.dim()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimDiagResult {
    /// Column-major basis vectors: `basis[j]` is the j-th column.
    pub basis: Vec<Vec<f64>>,
    pub q_diag: Vec<f64>,
    pub r_diag: Vec<f64>,
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Orientation {
    Positive,
    Negative,
    Zero,
}

fn orientation(which: &'static str, q: &QuadraticForm) -> Result<Orientation> {
    let inertia = q.inertia();
    match Classification::from_inertia(inertia) {
        Classification::Zero => Ok(Orientation::Zero),
        Classification::PositiveDefinite | Classification::PositiveSemidefiniteDegenerate => {
            Ok(Orientation::Positive)
        }
        Classification::NegativeDefinite | Classification::NegativeSemidefiniteDegenerate => {
            Ok(Orientation::Negative)
        }
        Classification::Indefinite => Err(Error::NotSemidefinite {
            which,
            inertia: inertia.to_string(),
        }),
    }
}

fn positive_version(q: &QuadraticForm, o: Orientation) -> QuadraticForm {
    if o == Orientation::Negative {
        q.negate()
    } else {
        q.clone()
    }
}

fn check_dims(q: &QuadraticForm, r: &QuadraticForm) -> Result<()> {
    if q.dim() != r.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.dim(),
            found: r.dim(),
        });
    }
    Ok(())
}

/// Exact basis of `{x : Qx = 0}`, which is the zero set of a semidefinite
/// form. Vectors are scaled to primitive integer form.
pub fn kernel_basis(q: &QuadraticForm) -> Result<SubspaceBasis> {
    orientation("q", q)?;
    Ok(SubspaceBasis {
        dim_ambient: q.dim(),
        vectors: q
            .matrix()
            .null_space()
            .iter()
            .map(|v| primitive_integer_vector(v))
            .collect(),
    })
}

/// First kernel vector of `q` outside the kernel of `r`, if any.
fn kernel_escape(q: &QuadraticForm, r: &QuadraticForm) -> Result<Option<Vec<Rational>>> {
    let kernel = kernel_basis(q)?;
    for v in kernel.vectors {
        if r.matrix().mul_vec(&v)?.iter().any(|x| !x.is_zero()) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Exact test of `Z_q ⊆ Z_r` for semidefinite `q` and `r` (either
/// orientation each).
pub fn containment_psd(q: &QuadraticForm, r: &QuadraticForm) -> Result<bool> {
    check_dims(q, r)?;
    orientation("q", q)?;
    orientation("r", r)?;
    Ok(kernel_escape(q, r)?.is_none())
}

fn psd_witness(q: &QuadraticForm, r: &QuadraticForm, v: Vec<Rational>) -> Result<WitnessVector> {
    let one = Rational::one();
    let coords = v.into_iter().map(|x| QuadExt::rational(x, &one)).collect();
    WitnessVector::new(q, r, coords)
}

/// Greedy completion of `kernel` to a basis of `Q^n` with standard basis
/// vectors, lowest index first. Returns the added vectors.
pub fn complement_basis(kernel: &SubspaceBasis) -> SubspaceBasis {
    let n = kernel.dim_ambient;
    let mut current = kernel.vectors.clone();
    let mut added = Vec::new();
    for i in 0..n {
        if current.len() == n {
            break;
        }
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        current.push(e.clone());
        if Matrix::from_columns(n, &current).rank() == current.len() {
            added.push(e);
        } else {
            current.pop();
        }
    }
    SubspaceBasis {
        dim_ambient: n,
        vectors: added,
    }
}

fn to_dmatrix(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].to_f64())
}

/// Largest off-diagonal magnitude, relative to the largest diagonal
/// magnitude when that exceeds `tol`.
fn relative_off_diagonal(m: &DMatrix<f64>, tol: f64) -> f64 {
    let n = m.nrows();
    let diag_max = (0..n).map(|i| m[(i, i)].abs()).fold(0.0, f64::max);
    let off_max = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| m[(i, j)].abs())
        .fold(0.0, f64::max);
    if diag_max > tol {
        off_max / diag_max
    } else {
        off_max
    }
}

/// Residual of a candidate floating-point basis against the exact forms.
pub fn simdiag_residual(q: &QuadraticForm, r: &QuadraticForm, basis: &[Vec<f64>], tol: f64) -> f64 {
    let n = q.dim();
    let b = DMatrix::from_fn(n, basis.len(), |i, j| basis[j][i]);
    let bq = b.transpose() * to_dmatrix(q.matrix()) * &b;
    let br = b.transpose() * to_dmatrix(r.matrix()) * &b;
    relative_off_diagonal(&bq, tol).max(relative_off_diagonal(&br, tol))
}

/// Simultaneously diagonalizes semidefinite `q`, `r` with `Z_q ⊆ Z_r`.
///
/// The kernel of `q` is completed by a complement `M` on which `q` is
/// definite. On `M`, with `q|M = LLᵀ`, the eigenvectors `U` of
/// `L⁻¹ (r|M) L⁻ᵀ` give the basis `L⁻ᵀU`. Kernel columns come last with
/// both diagonal entries exactly zero.
pub fn simdiag_psd(q: &QuadraticForm, r: &QuadraticForm, tol: f64) -> Result<SimDiagResult> {
    check_dims(q, r)?;
    let oq = orientation("q", q)?;
    let or = orientation("r", r)?;
    if let Some(v) = kernel_escape(q, r)? {
        let w = psd_witness(q, r, v)?;
        return Err(Error::ContainmentFails(Some(Box::new(w))));
    }
    let qp = positive_version(q, oq);
    let rp = positive_version(r, or);
    let n = q.dim();

    let kernel = kernel_basis(&qp)?;
    let complement = complement_basis(&kernel);
    let m = complement.as_matrix();
    let q_m = to_dmatrix(&qp.matrix().congruent(&m)?);
    let r_m = to_dmatrix(&rp.matrix().congruent(&m)?);
    let k = complement.dim();

    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut eigen_r: Vec<f64> = Vec::with_capacity(k);
    if k > 0 {
        let chol = q_m.clone().cholesky().ok_or(Error::NumericalFailure {
            residual: f64::INFINITY,
            tol,
        })?;
        let l = chol.l();
        let l_inv = l.clone().try_inverse().ok_or(Error::NumericalFailure {
            residual: f64::INFINITY,
            tol,
        })?;
        let mut s = &l_inv * &r_m * l_inv.transpose();
        s = (&s + s.transpose()) * 0.5;
        let eig = SymmetricEigen::new(s);
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let w = l_inv.transpose() * &eig.eigenvectors;
        let m_f = to_dmatrix(&m);
        let full = &m_f * &w;
        for &c in &order {
            let mut col: Vec<f64> = full.column(c).iter().copied().collect();
            // sign convention: first significant entry positive
            if let Some(first) = col.iter().find(|x| x.abs() > tol) {
                if *first < 0.0 {
                    col.iter_mut().for_each(|x| *x = -*x);
                }
            }
            columns.push(col);
            eigen_r.push(eig.eigenvalues[c]);
        }
    }
    for v in &kernel.vectors {
        columns.push(v.iter().map(Rational::to_f64).collect());
    }

    let b = DMatrix::from_fn(n, n, |i, j| columns[j][i]);
    let bq = b.transpose() * to_dmatrix(q.matrix()) * &b;
    let br = b.transpose() * to_dmatrix(r.matrix()) * &b;
    let residual = relative_off_diagonal(&bq, tol).max(relative_off_diagonal(&br, tol));

    let r_sign = if or == Orientation::Negative {
        -1.0
    } else {
        1.0
    };
    let mut q_diag: Vec<f64> = (0..k).map(|i| bq[(i, i)]).collect();
    let mut r_diag: Vec<f64> = eigen_r.iter().map(|x| r_sign * x).collect();
    q_diag.extend(std::iter::repeat_n(0.0, n - k));
    r_diag.extend(std::iter::repeat_n(0.0, n - k));

    if residual.is_nan() || residual > tol {
        return Err(Error::NumericalFailure { residual, tol });
    }
    Ok(SimDiagResult {
        basis: columns,
        q_diag,
        r_diag,
        residual,
    })
}

/// Dispatch: indefinite `q` goes through the proportionality decision,
/// semidefinite pairs of matching orientation through [`simdiag_psd`].
pub fn simdiag_general(q: &QuadraticForm, r: &QuadraticForm, tol: f64) -> Result<SimDiagResult> {
    check_dims(q, r)?;
    let q_class = q.classify();
    if q_class == Classification::Indefinite {
        return match decide_containment(q, r)? {
            ContainmentVerdict::Proportional(alpha) => {
                let d = q.congruence_diagonalize();
                let n = q.dim();
                let basis = (0..n)
                    .map(|j| d.basis.column(j).iter().map(Rational::to_f64).collect())
                    .collect();
                Ok(SimDiagResult {
                    basis,
                    q_diag: d.diag.iter().map(Rational::to_f64).collect(),
                    r_diag: d.diag.iter().map(|x| (x * &alpha).to_f64()).collect(),
                    residual: 0.0,
                })
            }
            ContainmentVerdict::Counterexample(w) => {
                Err(Error::ContainmentFails(Some(Box::new(w))))
            }
        };
    }
    let r_class = r.classify();
    if r_class == Classification::Indefinite {
        return Err(Error::Unsupported(format!(
            "q is {q_class} but r is indefinite; neither proportionality nor the semidefinite case applies"
        )));
    }
    let oq = orientation("q", q)?;
    let or = orientation("r", r)?;
    let mixed = matches!(
        (oq, or),
        (Orientation::Positive, Orientation::Negative)
            | (Orientation::Negative, Orientation::Positive)
    );
    if mixed {
        return Err(Error::Unsupported(format!(
            "q is {q_class} and r is {r_class}; opposite orientations are not handled"
        )));
    }
    simdiag_psd(q, r, tol)
}
