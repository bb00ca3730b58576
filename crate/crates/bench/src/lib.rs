//! Input generators shared by the criterion benches.

use qformkit_core::{Matrix, QuadraticForm, Rational};
use rand::Rng;

/// Random symmetric integer form of size `n` with entries in `[-5, 5]`,
/// redrawn until it is indefinite.
pub fn random_indefinite<R: Rng>(rng: &mut R, n: usize) -> QuadraticForm {
    loop {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = Rational::from_int(rng.gen_range(-5..=5));
                m[(i, j)] = v.clone();
                m[(j, i)] = v;
            }
        }
        let q = QuadraticForm::new(m).expect("symmetric by construction");
        if q.inertia().is_indefinite() {
            return q;
        }
    }
}
