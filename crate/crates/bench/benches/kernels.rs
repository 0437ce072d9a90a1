use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use tricolor_bench::{gnp, process};
use tricolor_core::composite::{color_by_vertex_count, color_explicit_constant, ColorOptions};
use tricolor_core::indep::turan_independent_set;
use tricolor_core::triangles::count_triangles;

fn bench_triangle_counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_triangles");
    for &n in &[200u64, 400, 800] {
        let g = gnp(n, 0.1, 7);
        group.bench_with_input(BenchmarkId::new("gnp_p0.1", n), &g, |b, g| {
            b.iter(|| black_box(count_triangles(g)))
        });
    }
    let g = process(1024, 3);
    group.bench_function("process_1024", |b| {
        b.iter(|| black_box(count_triangles(&g)))
    });
    group.finish();
}

fn bench_degeneracy(c: &mut Criterion) {
    let g = gnp(1000, 0.05, 11);
    c.bench_function("degeneracy_order_gnp1000", |b| {
        b.iter(|| black_box(g.degeneracy_order()))
    });
}

fn bench_turan(c: &mut Criterion) {
    let g = gnp(500, 0.1, 13);
    c.bench_function("turan_independent_set_gnp500", |b| {
        b.iter(|| black_box(turan_independent_set(&g)))
    });
}

fn bench_coloring(c: &mut Criterion) {
    let mut group = c.benchmark_group("coloring");
    group.sample_size(10);
    let opts = ColorOptions::default();
    let sparse = process(512, 5);
    group.bench_function("vertex_count_process512", |b| {
        b.iter(|| black_box(color_by_vertex_count(&sparse, 1, &opts)))
    });
    let dense = gnp(200, 0.4, 9);
    group.bench_function("explicit_constant_gnp200", |b| {
        b.iter(|| black_box(color_explicit_constant(&dense)))
    });
    group.finish();
}

fn bench_generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate");
    group.sample_size(10);
    group.bench_function("triangle_free_process_1024", |b| {
        b.iter(|| black_box(process(1024, 17)))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_triangle_counting,
    bench_degeneracy,
    bench_turan,
    bench_coloring,
    bench_generation
);
criterion_main!(benches);
