use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use idverify_core::corpus::{verify, verify_all, Filter, Profile, RunConfig};
use idverify_core::exact::{primes_upto, search_diophantine, DiophantineKind};
use idverify_core::quad::{integrate, Interval, QuadOptions};
use idverify_core::seqsum::sum_alternating;
use idverify_core::specfun::{dilog, trigamma, zeta};

fn kernels(c: &mut Criterion) {
    let opts = QuadOptions::with_tol(1e-13).unwrap();
    let unit = Interval::finite(0.0, 1.0).unwrap();
    c.bench_function("quad/log-singular", |b| b.iter(|| integrate(|x: f64| black_box(x).ln(), &unit, &opts).unwrap()));
    let half_line = Interval::semi_infinite(0.0).unwrap();
    c.bench_function("quad/semi-infinite", |b| {
        b.iter(|| integrate(|x: f64| x * x / ((1.0 + x * x) * (1.0 + x.powi(6))), &half_line, &opts).unwrap())
    });
    c.bench_function("seqsum/cvz-catalan", |b| b.iter(|| sum_alternating(|n| 1.0 / ((2 * n + 1) as f64).powi(2), 0, 1e-14).unwrap()));
    c.bench_function("specfun/zeta-dilog-trigamma", |b| {
        b.iter(|| zeta(black_box(3.0)).unwrap() + dilog(black_box(0.3)).unwrap() + trigamma(black_box(2.5)).unwrap())
    });
    c.bench_function("exact/primes-1e6", |b| b.iter(|| primes_upto(black_box(1_000_000)).unwrap().len()));
    c.bench_function("exact/search-2117", |b| b.iter(|| search_diophantine(DiophantineKind::FactorialPower2117, 60).unwrap()));
}

fn corpus(c: &mut Criterion) {
    let full = RunConfig::default();
    c.bench_function("corpus/amm-12479", |b| b.iter(|| verify("amm-12479", &full).unwrap()));
    let fast = RunConfig::new(Profile::Fast, 0, 1.0).unwrap();
    let mut g = c.benchmark_group("corpus");
    g.sample_size(10);
    g.bench_function("fast-profile-all", |b| b.iter(|| verify_all(&Filter::all(), 1, &fast).unwrap()));
    g.finish();
}

criterion_group!(benches, kernels, corpus);
criterion_main!(benches);
