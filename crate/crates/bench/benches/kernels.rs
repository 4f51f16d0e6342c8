use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ks3_core::map::catalog;
use ks3_core::numerics::{eig_hermitian, polar_decompose, RealMatrix};
use ks3_core::random::{ginibre, hermitian, rng_for};
use ks3_core::{
    choi_matrix, classify, is_cp, ks_difference, positivity_search, sample_random_map,
    search_violation, Budgets, RandomMapKind, SearchOptions,
};
use std::hint::black_box;

fn numerics(c: &mut Criterion) {
    let mut rng = rng_for(1, 0);
    for dim in [3, 9] {
        let h = hermitian(&mut rng, dim);
        c.bench_with_input(BenchmarkId::new("eig_hermitian", dim), &h, |b, h| {
            b.iter(|| eig_hermitian(black_box(h)).unwrap())
        });
    }
    let g = ginibre(&mut rng, 8);
    let t = RealMatrix::from_fn(8, 8, |i, j| g[(i, j)].re);
    c.bench_function("polar_decompose/8", |b| {
        b.iter(|| polar_decompose(black_box(&t)).unwrap())
    });
}

fn maps(c: &mut Criterion) {
    let map = sample_random_map(RandomMapKind::Kraus { terms: 3 }, 5).unwrap();
    let x = ginibre(&mut rng_for(2, 0), 3);
    c.bench_function("choi_matrix", |b| b.iter(|| choi_matrix(black_box(&map))));
    c.bench_function("is_cp", |b| {
        b.iter(|| is_cp(black_box(&map), 1e-9).unwrap())
    });
    c.bench_function("ks_difference", |b| {
        b.iter(|| ks_difference(black_box(&map), black_box(&x)).unwrap())
    });
}

fn searches(c: &mut Criterion) {
    let map = catalog::depolarizing(0.9).unwrap();
    let mut group = c.benchmark_group("search");
    for budget in [1, 64] {
        let opts = SearchOptions::new(budget, 0);
        group.bench_with_input(BenchmarkId::new("ks", budget), &opts, |b, o| {
            b.iter(|| search_violation(black_box(&map), o).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("positivity", budget), &opts, |b, o| {
            b.iter(|| positivity_search(black_box(&map), o).unwrap())
        });
    }
    group.sample_size(20);
    group.bench_function("classify_transposition", |b| {
        b.iter(|| classify(&catalog::transposition(), Budgets::uniform(200), 0, 1e-9, 0).unwrap())
    });
    group.finish();
}

criterion_group!(benches, numerics, maps, searches);
criterion_main!(benches);
