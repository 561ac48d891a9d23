use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lightspan::{greedy_spanner, weighted_girth, Rational};
use lightspan_bench::gnm_instance;

fn greedy(c: &mut Criterion) {
    let mut group = c.benchmark_group("greedy_spanner");
    let t = Rational::new(3, 1);
    for n in [32, 64, 128] {
        let g = gnm_instance(n, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| greedy_spanner(g, &t).unwrap()));
    }
    group.finish();
}

fn girth(c: &mut Criterion) {
    let mut group = c.benchmark_group("weighted_girth");
    for n in [32, 64, 128] {
        let g = gnm_instance(n, 2);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| weighted_girth(g)));
    }
    group.finish();
}

criterion_group!(benches, greedy, girth);
criterion_main!(benches);
