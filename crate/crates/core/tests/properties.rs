use proptest::prelude::*;
use qformkit_core::io::{form_to_json, parse_form_json, parse_poly_json, poly_to_json};
use qformkit_core::{
    containment_psd, decide_containment, decide_containment_homogeneous, reduce_by_quadratic,
    simdiag_psd, verify_witness, ContainmentVerdict, HomogeneousPoly, HomogeneousVerdict, Matrix,
    QuadraticForm, Rational,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, prop_oneof![4 => Just(1i64), 1 => 2i64..=3]).prop_map(|(n, d)| Rational::new(n, d))
}

fn symmetric(n: usize) -> impl Strategy<Value = QuadraticForm> {
    proptest::collection::vec(
        prop_oneof![1 => Just(Rational::zero()), 2 => rational()],
        n * (n + 1) / 2,
    )
    .prop_map(move |upper| {
        let mut m = Matrix::zeros(n, n);
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i..n {
                let v = it.next().unwrap();
                m[(i, j)] = v.clone();
                m[(j, i)] = v;
            }
        }
        QuadraticForm::new(m).unwrap()
    })
}

fn pair(max_n: usize) -> impl Strategy<Value = (QuadraticForm, QuadraticForm)> {
    (2..=max_n).prop_flat_map(|n| (symmetric(n), symmetric(n)))
}

fn integer_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        let rows: Vec<Vec<Rational>> = v
            .chunks(cols)
            .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
            .collect();
        Matrix::from_rows(rows).unwrap()
    })
}

fn gram(a: &Matrix) -> QuadraticForm {
    QuadraticForm::new(a.transpose().checked_mul(a).unwrap()).unwrap()
}

fn stacked(a: &Matrix, b: &Matrix) -> Matrix {
    let mut rows = a.to_rows();
    rows.extend(b.to_rows());
    Matrix::from_rows(rows).unwrap()
}

fn ratio(q: &QuadraticForm, r: &QuadraticForm) -> Option<Rational> {
    let n = q.dim();
    let (i, j) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| !q.entry(i, j).is_zero())?;
    let alpha = r.entry(i, j) / q.entry(i, j);
    (q.scale(&alpha) == *r).then_some(alpha)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decision_matches_direct_proportionality((q, r) in pair(5)) {
        prop_assume!(q.inertia().is_indefinite());
        let verdict = decide_containment(&q, &r).unwrap();
        match (verdict, ratio(&q, &r)) {
            (ContainmentVerdict::Proportional(a), Some(b)) => prop_assert_eq!(a, b),
            (ContainmentVerdict::Counterexample(w), None) => {
                prop_assert!(verify_witness(&q, &r, &w).unwrap());
                prop_assert!(w.q_value.is_zero());
                prop_assert!(!w.r_value.is_zero());
            }
            (v, b) => prop_assert!(false, "verdict {:?} but direct ratio {:?}", v, b),
        }
    }

    #[test]
    fn containment_is_symmetric_for_proportional_pairs(q in (2usize..=4).prop_flat_map(symmetric), k in rational()) {
        prop_assume!(q.inertia().is_indefinite() && !k.is_zero());
        let scaled = q.scale(&k);
        let forward = decide_containment(&q, &scaled).unwrap();
        let back = decide_containment(&scaled, &q).unwrap();
        prop_assert_eq!(forward.alpha().cloned(), Some(k.clone()));
        prop_assert_eq!(back.alpha().cloned(), k.recip());
    }

    /// `Z_{AᵀA} ⊆ Z_{BᵀB}` iff `ker A ⊆ ker B` iff the rows of B lie in the
    /// row space of A.
    #[test]
    fn psd_containment_matches_row_space_oracle(
        (a, b) in (2usize..=5).prop_flat_map(|n| (integer_matrix(2, n), integer_matrix(2, n)))
    ) {
        let q = gram(&a);
        let r = gram(&b);
        let oracle = stacked(&a, &b).rank() == a.rank();
        prop_assert_eq!(containment_psd(&q, &r).unwrap(), oracle);
    }

    #[test]
    fn psd_pairs_diagonalize_simultaneously(
        (a, mix) in (2usize..=5).prop_flat_map(|n| (integer_matrix(3, n), integer_matrix(2, 3)))
    ) {
        // rows of B = mix · A stay in the row space of A
        let b = mix.checked_mul(&a).unwrap();
        let q = gram(&a);
        let r = gram(&b);
        prop_assume!(!q.matrix().is_zero());
        let res = simdiag_psd(&q, &r, 1e-9).unwrap();
        let n = q.dim();
        let qm = q.matrix().to_f64_rows();
        let rm = r.matrix().to_f64_rows();
        let scale = qm.iter().chain(rm.iter()).flatten().fold(1.0f64, |s, x| s.max(x.abs()));
        let bil = |m: &[Vec<f64>], x: &[f64], y: &[f64]| -> f64 {
            (0..n).map(|i| (0..n).map(|j| x[i] * m[i][j] * y[j]).sum::<f64>()).sum()
        };
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let (u, v) = (&res.basis[i], &res.basis[j]);
                    prop_assert!(bil(&qm, u, v).abs() <= 1e-7 * scale);
                    prop_assert!(bil(&rm, u, v).abs() <= 1e-7 * scale);
                }
            }
            let u = &res.basis[i];
            prop_assert!((bil(&rm, u, u) - res.r_diag[i]).abs() <= 1e-7 * scale);
        }
    }

    #[test]
    fn homogeneous_divisibility_matches_remainder(
        (q, s) in (2usize..=3).prop_flat_map(|n| (symmetric(n), symmetric(n))),
        multiply in any::<bool>(),
    ) {
        prop_assume!(q.inertia().is_indefinite());
        let qp = HomogeneousPoly::from_form(&q);
        let r = if multiply {
            qp.try_mul(&HomogeneousPoly::from_form(&s)).unwrap()
        } else {
            HomogeneousPoly::from_form(&s)
        };
        let rem_zero = reduce_by_quadratic(&r, &qp).unwrap().remainder.is_zero();
        match decide_containment_homogeneous(&q, &r, 200, 0).unwrap() {
            HomogeneousVerdict::Divisible(quot) => {
                prop_assert!(rem_zero);
                prop_assert_eq!(qp.try_mul(&quot).unwrap(), r);
            }
            HomogeneousVerdict::Witness(w) => {
                prop_assert!(!rem_zero);
                prop_assert!(q.evaluate_ext(&w.coords).unwrap().is_zero());
                prop_assert!(!r.evaluate_ext(&w.coords).unwrap().is_zero());
            }
            HomogeneousVerdict::NonDivisibleWitnessBudgetExhausted { .. } => prop_assert!(!rem_zero),
        }
    }

    #[test]
    fn json_round_trips((q, s) in pair(4)) {
        let text = form_to_json(&q).to_string();
        prop_assert_eq!(parse_form_json(&text).unwrap(), q.clone());
        let p = HomogeneousPoly::from_form(&q).try_mul(&HomogeneousPoly::from_form(&s)).unwrap();
        let text = poly_to_json(&p).to_string();
        prop_assert_eq!(parse_poly_json(&text).unwrap(), p);
    }
}
