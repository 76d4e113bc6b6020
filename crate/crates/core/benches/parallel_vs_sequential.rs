//! Each workload runs on rayon's default pool and inside a one-thread pool.
//! Build with `--no-default-features` to time the purely sequential code path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mixedvol_core::geometry::{mixed_volume, RationalPolytope};
use mixedvol_core::monomial::MonomialIdeal;
use mixedvol_core::multiplicity::{mixed_multiplicities_ideals, MultiplicityConfig};
use mixedvol_core::okounkov::{level_count, GammaSpec, Variant};
use mixedvol_core::par;
use mixedvol_core::verify::{verify_theorem, VerifyOptions};
use mixedvol_core::GradedFamily;

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let default = rayon::ThreadPoolBuilder::new().build().unwrap();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    vec![("default_pool", default), ("one_thread", single)]
}

fn label(pool: &str) -> String {
    if par::is_parallel() {
        pool.to_string()
    } else {
        format!("sequential_build/{pool}")
    }
}

fn bench_mixed_multiplicities(c: &mut Criterion) {
    let i = MonomialIdeal::maximal(3);
    let j1 = MonomialIdeal::new(3, vec![vec![0, 0, 2], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]]).unwrap();
    let j2 = MonomialIdeal::new(3, vec![vec![2, 0, 0], vec![0, 3, 0], vec![1, 1, 1], vec![0, 0, 2]]).unwrap();
    let js = vec![j1, j2];
    let config = MultiplicityConfig::default();
    let mut group = c.benchmark_group("mixed_multiplicities");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(label(name)), |b| {
            pool.install(|| b.iter(|| mixed_multiplicities_ideals(&i, &js, &config).unwrap()))
        });
    }
    group.finish();
}

fn bench_mixed_volume(c: &mut Criterion) {
    let cube = RationalPolytope::unit_cube(3);
    let simplex = RationalPolytope::from_int_points(&[vec![0, 0, 0], vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]).unwrap();
    let bodies = vec![cube.clone(), simplex, cube];
    let mut group = c.benchmark_group("mixed_volume_3d");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(label(name)), |b| {
            pool.install(|| b.iter(|| mixed_volume(&bodies).unwrap()))
        });
    }
    group.finish();
}

fn bench_verification(c: &mut Criterion) {
    let sq = RationalPolytope::unit_cube(2);
    let bodies = vec![sq.clone(), sq];
    let options = VerifyOptions {
        schedule: vec![1, 2, 4],
        ..VerifyOptions::default()
    };
    let mut group = c.benchmark_group("verify_two_squares");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(label(name)), |b| {
            pool.install(|| b.iter(|| verify_theorem(&bodies, &options).unwrap()))
        });
    }
    group.finish();
}

fn bench_level_counts(c: &mut Criterion) {
    let mm = GradedFamily::maximal(3);
    let spec = GammaSpec::with_default_c(Variant::Plain, mm.clone(), vec![mm], 1, vec![1]).unwrap();
    let mut group = c.benchmark_group("okounkov_level_count");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(label(name)), |b| {
            pool.install(|| b.iter(|| level_count(&spec, 24).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_mixed_multiplicities, bench_mixed_volume, bench_verification, bench_level_counts);
criterion_main!(benches);
