//! Parallel vs sequential execution of the verification suites.
//!
//! The library runs suite jobs through rayon when the `parallel` feature is
//! on (the default) and falls back to a plain loop otherwise; both paths are
//! always compiled, so this harness compares them directly on the same
//! workloads.

use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use surreals::verify::{run_suite, run_suite_sequential, VerifyOptions};

/// Suites small enough to iterate under a bench harness; the genetic
/// arithmetic suites are excluded (seconds per run, and their jobs share no
/// state worth contending over).
const BENCH_SUITES: &[&str] = &[
    "anchors",
    "omega-cut",
    "kappa-cut",
    "kappa-minimal",
    "h-tails",
    "log-chains",
    "two-route",
];

fn suites(c: &mut Criterion) {
    let opts = VerifyOptions::default();
    let mut group = c.benchmark_group("suites");
    group
        .sample_size(10)
        .measurement_time(Duration::from_secs(5));
    for name in BENCH_SUITES {
        group.bench_function(BenchmarkId::new("parallel", name), |b| {
            b.iter(|| run_suite(name, &opts).expect("known suite"));
        });
        group.bench_function(BenchmarkId::new("sequential", name), |b| {
            b.iter(|| run_suite_sequential(name, &opts).expect("known suite"));
        });
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
