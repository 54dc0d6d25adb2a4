use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use unitrunc_core::homology::{self, snf};
use unitrunc_core::{complex, presentation, IntegerMatrix, Sieve};

fn sieve(c: &mut Criterion) {
    c.bench_function("sieve 10^6", |b| {
        b.iter(|| Sieve::new(black_box(1_000_000)).unwrap())
    });
}

fn generators(c: &mut Criterion) {
    let s = Sieve::new(10_000).unwrap();
    c.bench_function("generators 2000", |b| {
        b.iter(|| presentation::generators(&s, black_box(2000)).unwrap())
    });
}

fn subset_scan(c: &mut Criterion) {
    let s = Sieve::new(1000).unwrap();
    c.bench_function("subset scan 30", |b| {
        b.iter(|| homology::subset_homology_scan(&s, black_box(30), 20).unwrap())
    });
}

fn smith(c: &mut Criterion) {
    // boundary of the 1-skeleton of Δ([1000])
    let s = Sieve::new(1000).unwrap();
    let cx = complex::SimplicialComplex::build(&s, 1000).unwrap();
    let bd: Vec<IntegerMatrix> = homology::boundary_matrices(&cx);
    let m = bd
        .iter()
        .max_by_key(|m| m.rows() * m.cols())
        .unwrap()
        .clone();
    c.bench_function("smith normal form", |b| {
        b.iter(|| snf::smith_normal_form(black_box(&m)))
    });
}

fn symmetric(c: &mut Criterion) {
    let s = Sieve::new(1_000_000).unwrap();
    let mut g = c.benchmark_group("symmetric scan");
    g.sample_size(10);
    g.bench_function("r <= 6", |b| {
        b.iter(|| complex::symmetric_scan(&s, black_box(6)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, sieve, generators, subset_scan, smith, symmetric);
criterion_main!(benches);
