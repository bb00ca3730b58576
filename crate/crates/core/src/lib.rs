//! Exact decision procedures for zero-set containment of real quadratic
//! forms.
//!
//! Every decision comes with a checkable certificate: a proportionality
//! constant, a quotient polynomial, a diagonalizing basis, or a null-cone
//! point `v` with `q(v) = 0` and `r(v) ≠ 0`.

pub mod containment;
pub mod error;
pub mod form;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod relativity;
pub mod scalar;
pub mod semidefinite;

pub use containment::{
    construct_witness, decide_containment, verify_witness, ContainmentVerdict, WitnessVector,
};
pub use error::{Error, Result};
pub use form::{
    congruence_diagonalize, Classification, CongruenceDiagonalization, Inertia, LinearTransform,
    QuadraticForm,
};
pub use matrix::Matrix;
pub use poly::{
    cone_point_from_draws, decide_containment_homogeneous, reduce_by_quadratic, sample_cone_point,
    verify_poly_witness, DivisionResult, HomogeneousPoly, HomogeneousVerdict,
};
pub use relativity::{
    boost_from_triple, boost_from_triple_with_speed, check_interval_invariance, minkowski_form,
    rotation_from_triple, SpatialAxis, SpatialPlane, TransformClass, TransformReport,
};
pub use scalar::{QuadExt, Rational};
pub use semidefinite::{
    containment_psd, kernel_basis, simdiag_general, simdiag_psd, SimDiagResult, SubspaceBasis,
};
