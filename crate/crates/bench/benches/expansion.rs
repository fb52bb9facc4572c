//! Benchmarks for the main pipelines on the corpus matroids.

use std::time::Duration;

use conormal_bench::{cube, pyramid};
use conormal_core::{delta_power, fh_vectors, gamma_delta_power, nbc_bases, Strategy};
use criterion::{criterion_group, criterion_main, Criterion};

fn activity_vectors(c: &mut Criterion) {
    let pyramid = pyramid();
    let cube = cube();
    c.bench_function("fh_vectors/pyramid", |b| b.iter(|| fh_vectors(&pyramid).unwrap()));
    c.bench_function("fh_vectors/cube", |b| b.iter(|| fh_vectors(&cube).unwrap()));
    c.bench_function("nbc_bases/cube", |b| b.iter(|| nbc_bases(&cube)));
}

fn delta_expansion(c: &mut Criterion) {
    let m = pyramid();
    let top = m.ground_size() - 2;
    c.bench_function("delta_power/pyramid/top", |b| b.iter(|| delta_power(&m, top).unwrap()));
}

fn gamma_expansion(c: &mut Criterion) {
    let pyramid = pyramid();
    c.bench_function("gamma_delta/pyramid/k=1", |b| {
        b.iter(|| gamma_delta_power(&pyramid, 1, &Strategy::TheoremPath).unwrap())
    });

    let cube = cube();
    let mut group = c.benchmark_group("gamma_delta/cube");
    group.sample_size(10).measurement_time(Duration::from_secs(20));
    group.bench_function("k=6", |b| {
        b.iter(|| gamma_delta_power(&cube, 6, &Strategy::TheoremPath).unwrap())
    });
    group.finish();
}

criterion_group!(benches, activity_vectors, delta_expansion, gamma_expansion);
criterion_main!(benches);
