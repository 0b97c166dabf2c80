use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pll_bench::{directed, scale_free, weighted};
use pll_core::{build_index_directed, build_index_hybrid, build_index_weighted, order_degree};

fn plain(c: &mut Criterion) {
    let g = scale_free(10_000);
    let mut group = c.benchmark_group("construct/ba-10k");
    group.sample_size(10);
    for t in [0usize, 4, 16, 64] {
        group.bench_with_input(BenchmarkId::new("bp_roots", t), &t, |b, &t| {
            b.iter(|| build_index_hybrid(&g, order_degree(&g), t).unwrap())
        });
    }
    group.finish();
}

fn variants(c: &mut Criterion) {
    let dg = directed(5_000);
    let wg = weighted(5_000);
    let mut group = c.benchmark_group("construct/variants-5k");
    group.sample_size(10);
    group.bench_function("directed", |b| {
        b.iter(|| build_index_directed(&dg, order_degree(&dg)).unwrap())
    });
    group.bench_function("weighted", |b| {
        b.iter(|| build_index_weighted(&wg, order_degree(&wg)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, plain, variants);
criterion_main!(benches);
