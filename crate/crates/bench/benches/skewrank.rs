use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use skewrank::graph::{generate_family, Family, FamilySpec, OrientationRule};
use skewrank::harness::{verify, EnumFilter, TheoremId};
use skewrank::linalg::{char_poly_exact, skew_adjacency};
use skewrank::spectra::coefficients_comb;
use skewrank::{skew_rank, OrientedGraph};

fn random_complete(n: usize) -> OrientedGraph {
    let parts = vec![1; n];
    generate_family(&FamilySpec::new(
        Family::CompleteMultipartite { parts },
        OrientationRule::SeedRandom(n as u64),
    ))
    .unwrap()
}

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("skew_rank");
    for n in [8, 16, 32, 64] {
        let g = random_complete(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| skew_rank(black_box(g))));
    }
    group.finish();
}

fn charpoly(c: &mut Criterion) {
    let mut group = c.benchmark_group("char_poly_exact");
    for n in [8, 16, 32] {
        let m = skew_adjacency(&random_complete(n));
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| char_poly_exact(black_box(m))));
    }
    group.finish();
}

fn coefficients(c: &mut Criterion) {
    let mut group = c.benchmark_group("coefficients_comb");
    for n in [6, 8, 10] {
        let g = generate_family(&FamilySpec::new(Family::Hnk { n, k: 4 }, OrientationRule::SeedRandom(1))).unwrap();
        group.bench_with_input(BenchmarkId::new("hnk", n), &g, |b, g| b.iter(|| coefficients_comb(black_box(g))));
    }
    let k6 = random_complete(6);
    group.bench_function("k6", |b| b.iter(|| coefficients_comb(black_box(&k6))));
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("lemma2.1-n5", |b| {
        b.iter(|| verify(TheoremId::Lemma2_1, &EnumFilter::exhaustive(5, 5)).unwrap())
    });
    group.bench_function("theorem4.2-coefficient-n6", |b| {
        b.iter(|| verify(TheoremId::Theorem4_2Coefficient, &EnumFilter::exhaustive(3, 6)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, rank, charpoly, coefficients, sweep);
criterion_main!(benches);
