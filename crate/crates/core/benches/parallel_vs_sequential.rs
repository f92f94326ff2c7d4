use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;

use linefree::corpus;
use linefree::diophantine::{enumerate_nonneg, predefined};
use linefree::syzygy::arrangement_verdict;

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    vec![
        ("sequential", ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("parallel", ThreadPoolBuilder::new().build().unwrap()),
    ]
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    let sys = predefined("lemma33_n5_2").unwrap();
    for (label, pool) in pools() {
        group.bench_with_input(BenchmarkId::new(label, "lemma33_n5_2"), &sys, |b, sys| {
            b.iter(|| pool.install(|| enumerate_nonneg(sys).unwrap().len()))
        });
    }
    group.finish();
}

fn verdict(c: &mut Criterion) {
    let mut group = c.benchmark_group("verdict");
    group.sample_size(10);
    let arr = corpus::unit13();
    for (label, pool) in pools() {
        group.bench_with_input(BenchmarkId::new(label, "unit13"), &arr, |b, arr| {
            b.iter(|| pool.install(|| arrangement_verdict(arr).unwrap().1))
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, verdict);
criterion_main!(benches);
