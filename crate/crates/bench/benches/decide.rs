use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use qformkit_bench::random_indefinite;
use qformkit_core::{
    decide_containment, decide_containment_homogeneous, reduce_by_quadratic, simdiag_psd,
    HomogeneousPoly, QuadraticForm, Rational,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn diagonalize(c: &mut Criterion) {
    let mut group = c.benchmark_group("congruence_diagonalize");
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for n in [3, 6, 10] {
        let q = random_indefinite(&mut rng, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &q, |b, q| {
            b.iter(|| black_box(q).congruence_diagonalize())
        });
    }
    group.finish();
}

fn containment(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide_containment");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [3, 6, 10] {
        let q = random_indefinite(&mut rng, n);
        let proportional = q.scale(&Rational::new(3, 2));
        let other = random_indefinite(&mut rng, n);
        group.bench_with_input(BenchmarkId::new("proportional", n), &n, |b, _| {
            b.iter(|| decide_containment(black_box(&q), black_box(&proportional)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("counterexample", n), &n, |b, _| {
            b.iter(|| decide_containment(black_box(&q), black_box(&other)).unwrap())
        });
    }
    group.finish();
}

fn homogeneous(c: &mut Criterion) {
    let mut group = c.benchmark_group("homogeneous");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in [3, 5] {
        let q = random_indefinite(&mut rng, n);
        let s = HomogeneousPoly::from_form(&random_indefinite(&mut rng, n));
        let qp = HomogeneousPoly::from_form(&q);
        let quartic = qp.try_mul(&s).unwrap();
        let sextic = quartic
            .try_mul(&s)
            .unwrap()
            .try_add(&s.try_mul(&s).unwrap().try_mul(&s).unwrap())
            .unwrap();
        group.bench_with_input(BenchmarkId::new("reduce_quartic", n), &n, |b, _| {
            b.iter(|| reduce_by_quadratic(black_box(&quartic), &qp).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("decide_sextic", n), &n, |b, _| {
            b.iter(|| decide_containment_homogeneous(&q, black_box(&sextic), 1000, 0).unwrap())
        });
    }
    group.finish();
}

fn semidefinite(c: &mut Criterion) {
    let q = QuadraticForm::from_i64_rows(&[&[2, 0, -1], &[0, 2, -1], &[-1, -1, 1]]).unwrap();
    let r = QuadraticForm::from_i64_rows(&[&[8, 8, -8], &[8, 16, -12], &[-8, -12, 10]]).unwrap();
    c.bench_function("simdiag_psd_3", |b| {
        b.iter(|| simdiag_psd(black_box(&q), &r, 1e-9).unwrap())
    });
}

criterion_group!(benches, diagonalize, containment, homogeneous, semidefinite);
criterion_main!(benches);
