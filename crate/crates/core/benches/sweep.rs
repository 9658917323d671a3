use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use hullcraft::code::{all_minors_nonsingular, min_distance};
use hullcraft::eaqec::enumerate_pairs;
use hullcraft::field::build_tower;
use hullcraft::par;
use hullcraft::rs::subgroup_candidate;
use hullcraft::DEFAULT_BUDGET;

fn distance(c: &mut Criterion) {
    let f = build_tower(3, 1).unwrap();
    let (code, _) = subgroup_candidate(&f, 8, 5).unwrap();
    let mut g = c.benchmark_group("min_distance_q3_n8_k5");
    g.bench_function("parallel", |b| {
        b.iter(|| min_distance(black_box(&code), DEFAULT_BUDGET).unwrap())
    });
    g.bench_function("sequential", |b| {
        b.iter(|| par::sequential(|| min_distance(black_box(&code), DEFAULT_BUDGET).unwrap()))
    });
    g.finish();
}

fn minors(c: &mut Criterion) {
    let f = build_tower(2, 2).unwrap();
    let (code, _) = subgroup_candidate(&f, 15, 8).unwrap();
    let mut g = c.benchmark_group("minors_q4_n15_k8");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| all_minors_nonsingular(black_box(&code)))
    });
    g.bench_function("sequential", |b| {
        b.iter(|| par::sequential(|| all_minors_nonsingular(black_box(&code))))
    });
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let f = build_tower(3, 1).unwrap();
    let pairs: Vec<(usize, usize)> = (4..=10usize)
        .flat_map(|n| (2..=(n + 2) / 2).map(move |d| (n, d)))
        .collect();
    let mut g = c.benchmark_group("length_distance_sweep_q3");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| enumerate_pairs(&f, black_box(&pairs), DEFAULT_BUDGET).unwrap())
    });
    g.bench_function("sequential", |b| {
        b.iter(|| {
            par::sequential(|| enumerate_pairs(&f, black_box(&pairs), DEFAULT_BUDGET).unwrap())
        })
    });
    g.finish();
}

criterion_group!(benches, distance, minors, sweep);
criterion_main!(benches);
