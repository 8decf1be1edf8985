//! Parallel vs sequential campaign drivers on a OneMax workload.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use evosim_core::dynamics::{Algorithm, AlgorithmConfig};
use evosim_core::experiments::{run_trials, run_trials_sequential};
use evosim_core::fitness::Problem;
use evosim_core::mutation::MutationKind;
use evosim_core::selection::SelectionParams;

fn config(n: usize) -> AlgorithmConfig {
    let nbeta = 0.5 * (11.0 * n as f64).ln();
    AlgorithmConfig {
        algorithm: Algorithm::Sswm(SelectionParams::from_nbeta(nbeta, 1.0).unwrap()),
        mutation: MutationKind::Global,
        problem: Problem::onemax(n).unwrap(),
    }
}

fn bench_run_trials(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_trials_onemax_n128_t64");
    group.sample_size(10);
    let cfg = config(128);
    let budget = 2_000_000;
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(run_trials(&cfg, 64, budget, 7, None)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(run_trials_sequential(&cfg, 64, budget, 7, None)))
    });
    group.finish();
}

fn bench_single_trial_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_trials_onemax_t16");
    group.sample_size(10);
    for n in [64usize, 256] {
        let cfg = config(n);
        group.bench_function(format!("parallel_n{n}"), |b| {
            b.iter(|| black_box(run_trials(&cfg, 16, 2_000_000, 3, None)))
        });
        group.bench_function(format!("sequential_n{n}"), |b| {
            b.iter(|| black_box(run_trials_sequential(&cfg, 16, 2_000_000, 3, None)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_run_trials, bench_single_trial_scaling);
criterion_main!(benches);
