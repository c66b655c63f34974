//! Benchmarks for the hot paths: bound evaluation (entrywise vs full matrix
//! products), observable optimization, roof search, and shot sampling.

use cohbound_core::linalg::{commutator, expectation};
use cohbound_core::{
    commutator_expectation, generalized_gell_mann, incoherent_part, optimal_observable,
    random_density, random_observable, roof_estimate, simulate_measurement, witness_operator,
    RoofBudget, SamplerConfig,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_commutator_expectation(c: &mut Criterion) {
    let mut group = c.benchmark_group("commutator_expectation");
    for dim in [2usize, 4, 8, 16] {
        let cfg = SamplerConfig::new(1, dim, dim).unwrap();
        let rho = random_density(&cfg);
        let a = random_observable(&cfg);
        group.bench_with_input(BenchmarkId::new("entrywise", dim), &dim, |b, _| {
            b.iter(|| commutator_expectation(&a, &rho).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("matrix_product", dim), &dim, |b, _| {
            b.iter(|| {
                let comm = commutator(&a, &incoherent_part(&a)).unwrap();
                expectation(&comm, &rho).unwrap() * 0.5
            })
        });
    }
    group.finish();
}

fn bench_optimal_observable(c: &mut Criterion) {
    let mut group = c.benchmark_group("optimal_observable");
    for dim in [2usize, 4, 8] {
        let cfg = SamplerConfig::new(2, dim, dim).unwrap();
        let rho = random_density(&cfg);
        let basis = generalized_gell_mann(dim).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |b, _| {
            b.iter(|| optimal_observable(&rho, &basis).unwrap())
        });
    }
    group.finish();
}

fn bench_roof_estimate(c: &mut Criterion) {
    let mut group = c.benchmark_group("roof_estimate");
    group.sample_size(10);
    for dim in [2usize, 3] {
        let cfg = SamplerConfig::new(3, dim, dim).unwrap();
        let rho = random_density(&cfg);
        let budget = RoofBudget {
            restarts: 10,
            iterations: 200,
            seed: 1,
        };
        group.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |b, _| {
            b.iter(|| roof_estimate(&rho, &budget).unwrap())
        });
    }
    group.finish();
}

fn bench_shot_simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulate_measurement");
    let cfg = SamplerConfig::new(4, 4, 4).unwrap();
    let rho = random_density(&cfg);
    let a = random_observable(&cfg);
    let w = witness_operator(&a).unwrap();
    for shots in [10_000u64, 100_000] {
        group.bench_with_input(BenchmarkId::from_parameter(shots), &shots, |b, &shots| {
            b.iter(|| simulate_measurement(&w, &rho, shots, 7).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_commutator_expectation,
    bench_optimal_observable,
    bench_roof_estimate,
    bench_shot_simulation
);
criterion_main!(benches);
