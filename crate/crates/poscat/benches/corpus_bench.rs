//! Benchmarks of the data-parallel sweeps against a forced sequential run.
//!
//! The default build fans work out over rayon; the sequential baseline runs
//! the same closure inside a one-thread pool. Building with
//! `--no-default-features` makes both sides sequential.

use criterion::{criterion_group, criterion_main, Criterion};
use poscat::battery::build_corpus;
use poscat::enumerate::enumerate_categories;
use poscat::limits::check_weakly_lex;
use std::hint::black_box;

fn enumerate_2_4(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate(2,4)");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(enumerate_categories(2, 4).unwrap().len()))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("sequential", |b| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        b.iter(|| pool.install(|| black_box(enumerate_categories(2, 4).unwrap().len())))
    });
    group.finish();
}

fn weakly_lex_sweep(c: &mut Criterion) {
    let cats = enumerate_categories(2, 4).unwrap();
    let mut group = c.benchmark_group("weakly-lex sweep(2,4)");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            black_box(poscat::par::map_collect(cats.clone(), |c| check_weakly_lex(&c).holds()))
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            black_box(poscat::par::map_collect_seq(cats.clone(), |c| {
                check_weakly_lex(&c).holds()
            }))
        })
    });
    group.finish();
}

fn corpus_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_corpus(2,3)");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(build_corpus(2, 3).unwrap().completions.len()))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("sequential", |b| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        b.iter(|| pool.install(|| black_box(build_corpus(2, 3).unwrap().completions.len())))
    });
    group.finish();
}

criterion_group!(benches, enumerate_2_4, weakly_lex_sweep, corpus_build);
criterion_main!(benches);
