use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rlstorage::harness::{run_experiment, ExperimentSpec, WorkloadSpec};
use rlstorage::par::Execution;
use rlstorage::simenv::DevicePreset;

fn spec(execution: Execution) -> ExperimentSpec {
    let mut s = ExperimentSpec::new(
        "bench",
        DevicePreset::Sata,
        WorkloadSpec::preset("oltp-mixed").unwrap().with_total_ops(2000),
    );
    s.seeds = (1..=8).collect();
    s.train_episodes = 3;
    s.execution = execution;
    s
}

fn seed_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("seed_sweep");
    group.sample_size(10);
    for (name, mode) in [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)] {
        let s = spec(mode);
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, s| {
            b.iter(|| run_experiment(s).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, seed_sweep);
criterion_main!(benches);
