use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use curvecov::experiments::{run_estimate_sweep, ExperimentConfig};
use curvecov::farey::BoundedFareyGraph;
use curvecov::par::Execution;
use curvecov::Slope;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn oracle(c: &mut Criterion) {
    let graph = BoundedFareyGraph::new(400).unwrap();
    let targets: Vec<Slope> = (1..=12)
        .flat_map(|q| (-12..=12).map(move |p| (p, q)))
        .filter(|(p, q)| num_integer::gcd(*p, *q) == 1)
        .map(|(p, q)| Slope::from_ints(p, q).unwrap())
        .collect();
    let mut group = c.benchmark_group("bfs_oracle");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| graph.pairwise_distances(&targets, exec).unwrap())
        });
    }
    group.finish();
}

fn estimate(c: &mut Criterion) {
    let cfg = ExperimentConfig {
        sample_count: 500,
        ..ExperimentConfig::default()
    };
    let mut group = c.benchmark_group("estimate_sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_estimate_sweep(&cfg, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, oracle, estimate);
criterion_main!(benches);
