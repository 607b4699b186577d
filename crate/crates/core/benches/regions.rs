use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;

use payreg_core::extremality::{classify_extreme_points, ExtremalityConfig};
use payreg_core::fixtures;
use payreg_core::geometry::{sample_region, SampleConfig};

fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let default = rayon::current_num_threads();
    [("single", 1), ("default", default)]
        .into_iter()
        .map(|(name, n)| (format!("{name}-{n}"), ThreadPoolBuilder::new().num_threads(n).build().unwrap()))
        .collect()
}

fn sampling(c: &mut Criterion) {
    let game = fixtures::example4();
    let cfg = SampleConfig {
        grid_resolution: 21,
        samples_per_round: 50_000,
        ..SampleConfig::default()
    };
    let mut group = c.benchmark_group("sample_region");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| sample_region(&game, &cfg).unwrap()))
        });
    }
    group.finish();
}

fn direction_sweep(c: &mut Criterion) {
    let game = fixtures::example4();
    let cfg = ExtremalityConfig::default();
    let mut group = c.benchmark_group("classify_extreme_points");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| classify_extreme_points(&game, &cfg).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, sampling, direction_sweep);
criterion_main!(benches);
