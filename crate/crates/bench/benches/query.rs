use std::hint::black_box;
use std::io::Cursor;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pll_bench::scale_free;
use pll_core::analysis::random_pairs;
use pll_core::store::encode_index;
use pll_core::{build_index_hybrid, order_degree, AnyIndex, DiskIndex};

fn in_memory(c: &mut Criterion) {
    let g = scale_free(50_000);
    let pairs = random_pairs(g.num_vertices(), 4096, 1);
    let mut group = c.benchmark_group("query/ba-50k");
    for t in [0usize, 16] {
        let idx = build_index_hybrid(&g, order_degree(&g), t).unwrap();
        group.bench_with_input(BenchmarkId::new("bp_roots", t), &idx, |b, idx| {
            let mut i = 0;
            b.iter(|| {
                let (s, t) = pairs[i % pairs.len()];
                i += 1;
                black_box(idx.query(s, t))
            })
        });
    }
    group.finish();
}

fn seek_based(c: &mut Criterion) {
    let g = scale_free(50_000);
    let pairs = random_pairs(g.num_vertices(), 4096, 2);
    let idx = build_index_hybrid(&g, order_degree(&g), 0).unwrap();
    let mut disk = DiskIndex::open(Cursor::new(encode_index(&AnyIndex::Plain(idx)))).unwrap();
    let mut i = 0;
    c.bench_function("query/ba-50k/disk", |b| {
        b.iter(|| {
            let (s, t) = pairs[i % pairs.len()];
            i += 1;
            black_box(disk.query(s, t).unwrap())
        })
    });
}

criterion_group!(benches, in_memory, seek_based);
criterion_main!(benches);
