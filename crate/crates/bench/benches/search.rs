use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cubesum::enumerate::{
    enumerate_positive, enumerate_positive_par, zero_sum_search, SearchConfig, ZeroSumSearchConfig,
};
use std::hint::black_box;

fn positive(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_positive");
    for n in [5, 6, 7, 8] {
        group.bench_with_input(BenchmarkId::new("pruned", n), &n, |b, &n| {
            b.iter(|| enumerate_positive(black_box(&SearchConfig::new(n))).unwrap())
        });
    }
    for n in [5, 6] {
        group.bench_with_input(BenchmarkId::new("unpruned", n), &n, |b, &n| {
            b.iter(|| enumerate_positive(black_box(&SearchConfig::new(n).unpruned())).unwrap())
        });
    }
    group.bench_function("parallel/8", |b| {
        b.iter(|| enumerate_positive_par(black_box(&SearchConfig::new(8))).unwrap())
    });
    group.finish();
}

fn zero_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("zero_sum_search");
    group.sample_size(10);
    for (n, bound) in [(5, 20), (6, 11), (7, 12), (9, 18)] {
        group.bench_with_input(
            BenchmarkId::new(format!("n{n}"), bound),
            &(n, bound),
            |b, &(n, bound)| b.iter(|| zero_sum_search(black_box(&ZeroSumSearchConfig::new(n, bound))).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, positive, zero_sum);
criterion_main!(benches);
