use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hilbring::presentation::{expansion_matrix, minimal_presentation_with};
use hilbring::{CycleType, StructureConstants};

fn theta_cold(c: &mut Criterion) {
    let eps: CycleType = "[0,0,0,0,0,0,0,1]".parse().unwrap();
    let alpha: CycleType = "[0,1,0,1]".parse().unwrap();
    let beta: CycleType = "[1]".parse().unwrap();
    c.bench_function("theta single 9-cycle, cold table", |b| {
        b.iter(|| StructureConstants::new().theta(black_box(&eps), &alpha, &beta))
    });
}

fn presentation(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimal presentation, cold table");
    group.sample_size(10);
    for d in [8, 9, 10] {
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| minimal_presentation_with(&StructureConstants::new(), d).unwrap())
        });
    }
    group.finish();
}

fn nullspace(c: &mut Criterion) {
    let mut group = c.benchmark_group("nullspace of expansion matrix");
    for (d, n) in [(8, 6), (10, 8)] {
        let m = expansion_matrix(d, n).unwrap();
        group.bench_with_input(BenchmarkId::new(format!("d={d}"), n), &m, |b, m| b.iter(|| m.nullspace()));
    }
    group.finish();
}

criterion_group!(benches, theta_cold, presentation, nullspace);
criterion_main!(benches);
