use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ctxkit::graph::{builtin_graph, independence_number, ks_assignment_search, lovasz_theta};
use ctxkit::rays::{builtin_rayset, enumerate_bases, exclusivity_graph};
use ctxkit_bench::random_graphs;

fn theta(c: &mut Criterion) {
    let mut group = c.benchmark_group("lovasz_theta");
    for name in ["c5", "icosa", "icosa16"] {
        let g = builtin_graph(name).unwrap();
        group.bench_with_input(BenchmarkId::new("builtin", name), &g, |b, g| {
            b.iter(|| lovasz_theta(black_box(g), 1e-8).unwrap())
        });
    }
    for n in [8, 16, 24] {
        let graphs = random_graphs(8, n, 0.5, 11);
        group.bench_with_input(BenchmarkId::new("random", n), &graphs, |b, gs| {
            b.iter(|| {
                for g in gs {
                    black_box(lovasz_theta(g, 1e-8).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn alpha(c: &mut Criterion) {
    let mut group = c.benchmark_group("independence_number");
    for n in [16, 32, 48, 64] {
        let graphs = random_graphs(8, n, 0.3, 12);
        group.bench_with_input(BenchmarkId::from_parameter(n), &graphs, |b, gs| {
            b.iter(|| {
                for g in gs {
                    black_box(independence_number(g).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn kochen_specker(c: &mut Criterion) {
    let rs = builtin_rayset("cabello18").unwrap();
    let g = exclusivity_graph(&rs, 0.0).unwrap();
    let bases = enumerate_bases(&rs).unwrap();
    c.bench_function("enumerate_bases/cabello18", |b| {
        b.iter(|| enumerate_bases(black_box(&rs)).unwrap())
    });
    c.bench_function("ks_assignment_search/cabello18", |b| {
        b.iter(|| ks_assignment_search(black_box(&g), &bases).unwrap())
    });
}

criterion_group!(benches, theta, alpha, kochen_specker);
criterion_main!(benches);
