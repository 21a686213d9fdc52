use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use prk_lab::batch::{normalize_all, normalize_all_seq};
use prk_lab::reduction::{Strategy, DEFAULT_FUEL};
use prk_lab::selftest::typed_corpus;
use prk_lab::syntax::Term;

fn corpus() -> Vec<Term> {
    typed_corpus(7, 200).into_iter().map(|j| j.term).collect()
}

fn bench_normalize(c: &mut Criterion) {
    let terms = corpus();
    let mut g = c.benchmark_group("normalize-200");
    g.bench_function("sequential", |b| {
        b.iter(|| normalize_all_seq(black_box(&terms), Strategy::LeftmostOutermost, DEFAULT_FUEL, false))
    });
    g.bench_function("parallel", |b| {
        b.iter(|| normalize_all(black_box(&terms), Strategy::LeftmostOutermost, DEFAULT_FUEL, false))
    });
    g.finish();
}

criterion_group!(benches, bench_normalize);
criterion_main!(benches);
