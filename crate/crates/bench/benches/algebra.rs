use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use finspinor::herm::{epimorphism, standard_herm_basis};
use finspinor::metric::metric_coefficients;
use finspinor::{sampling, scalar_n_product};

fn bench_scalar_product(c: &mut Criterion) {
    let mut group = c.benchmark_group("scalar_n_product");
    for n in [2usize, 4, 6] {
        let mut rng = sampling::rng(1);
        let spinors: Vec<_> = (0..n)
            .map(|_| sampling::random_spinor(n, &mut rng))
            .collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &spinors, |b, s| {
            b.iter(|| scalar_n_product(black_box(s)).unwrap())
        });
    }
    group.finish();
}

fn bench_epimorphism(c: &mut Criterion) {
    let mut group = c.benchmark_group("epimorphism");
    for n in [2usize, 3, 5] {
        let basis = standard_herm_basis(n).unwrap();
        let change = sampling::random_sl(n, &mut sampling::rng(2));
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| epimorphism(black_box(&change), &basis).unwrap())
        });
    }
    group.finish();
}

fn bench_metric(c: &mut Criterion) {
    let mut group = c.benchmark_group("metric_coefficients");
    group.sample_size(10);
    for n in [2usize, 3, 4] {
        let basis = standard_herm_basis(n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &basis, |b, basis| {
            b.iter(|| metric_coefficients(black_box(basis)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_scalar_product,
    bench_epimorphism,
    bench_metric
);
criterion_main!(benches);
