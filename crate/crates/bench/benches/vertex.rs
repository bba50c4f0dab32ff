use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use vertexlab_bench::bench_legs;
use vertexlab_core::dtvertex::{dt_counts, macmahon, SearchLimits};
use vertexlab_core::ptvertex::pt_euler_counts;

fn dt(c: &mut Criterion) {
    let mut group = c.benchmark_group("dt_counts");
    for (name, legs) in bench_legs() {
        group.bench_with_input(BenchmarkId::new(name, 4), &legs, |b, legs| {
            b.iter(|| dt_counts(black_box(legs), 4, SearchLimits::default()).unwrap())
        });
    }
    group.finish();
}

fn pt(c: &mut Criterion) {
    let mut group = c.benchmark_group("pt_euler_counts");
    group.sample_size(10);
    for (name, legs) in bench_legs() {
        group.bench_with_input(BenchmarkId::new(name, 3), &legs, |b, legs| {
            b.iter(|| pt_euler_counts(black_box(legs), 3, SearchLimits::default()).unwrap())
        });
    }
    group.finish();
}

fn mac(c: &mut Criterion) {
    c.bench_function("macmahon_60", |b| b.iter(|| macmahon(black_box(60))));
}

criterion_group!(benches, dt, pt, mac);
criterion_main!(benches);
