//! Optimizer costs: the exhaustive oracle against single-element local
//! search on the same instances.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use subpoly::{brute_force_optimize, local_search, Direction, Subset};
use subpoly_bench::cut;

fn bench_optimize(c: &mut Criterion) {
    let mut group = c.benchmark_group("optimize");
    group.sample_size(20);
    for n in [12usize, 16] {
        let f = cut(n);
        group.bench_with_input(BenchmarkId::new("brute_force_max", n), &n, |b, _| {
            b.iter(|| brute_force_optimize(black_box(&f), Direction::Maximize).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("local_search_max", n), &n, |b, _| {
            b.iter(|| {
                local_search(black_box(&f), Direction::Maximize, Subset::EMPTY).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_optimize);
criterion_main!(benches);
