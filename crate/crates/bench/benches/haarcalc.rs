use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use haarcalc::haar_mc::{block_rng, estimate_z, sample_haar, GroupSpec};
use haarcalc::largen::{wd_closed, wd_fixedpoint, wd_from_finite_n};
use haarcalc::su_shifted::{d_table_recursive, d_table_shift};
use haarcalc::weingarten::{z_table_character, z_table_recursive};
use haarcalc::SourceMatrices;

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("tables");
    for n in [3, 4, 5] {
        g.bench_with_input(BenchmarkId::new("z_character", n), &n, |b, &n| b.iter(|| z_table_character(black_box(n))));
        g.bench_with_input(BenchmarkId::new("d_shift", n), &n, |b, &n| b.iter(|| d_table_shift(black_box(n))));
    }
    g.finish();
}

fn recursion(c: &mut Criterion) {
    let mut g = c.benchmark_group("recursion");
    g.sample_size(10);
    for n in [3, 4, 5] {
        g.bench_with_input(BenchmarkId::new("z", n), &n, |b, &n| b.iter(|| z_table_recursive(black_box(n)).unwrap()));
        g.bench_with_input(BenchmarkId::new("d", n), &n, |b, &n| b.iter(|| d_table_recursive(black_box(n)).unwrap()));
    }
    g.finish();
}

fn largen(c: &mut Criterion) {
    let mut g = c.benchmark_group("largen");
    g.sample_size(10);
    g.bench_function("closed_8", |b| b.iter(|| wd_closed(black_box(8))));
    g.bench_function("fixedpoint_8", |b| b.iter(|| wd_fixedpoint(black_box(8))));
    g.bench_function("finite_n_4", |b| b.iter(|| wd_from_finite_n(black_box(4)).unwrap()));
    g.finish();
}

fn sampling(c: &mut Criterion) {
    let mut g = c.benchmark_group("sampling");
    for n in [2, 3, 6] {
        let spec = GroupSpec::special_unitary(n);
        let mut rng = block_rng(1, 0);
        g.bench_with_input(BenchmarkId::new("su", n), &spec, |b, &spec| b.iter(|| sample_haar(spec, &mut rng)));
    }
    let src = SourceMatrices::random(3, 0.6, 1);
    g.sample_size(10);
    g.bench_function("estimate_z_5_2_1e5", |b| {
        b.iter(|| estimate_z(5, 2, &src, GroupSpec::special_unitary(3), 100_000, 42).unwrap())
    });
    g.finish();
}

criterion_group!(benches, tables, recursion, largen, sampling);
criterion_main!(benches);
