//! Enumeration and sampling throughput, parallel against sequential.
//!
//! ```bash
//! cargo bench -p qproc-core
//! cargo bench -p qproc-core --no-default-features   # sequential-only build
//! ```

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qproc_core::builtins;
use qproc_core::generator::DensityMatrix;
use qproc_core::process::{
    enumerate_levels, enumerate_levels_sequential, sample_trajectory, EnumerationOptions, Initial,
};

/// Exact prefix-tree enumeration on the slowest-converging builtin; the
/// even-process support grows like the golden ratio to the L-th power, so
/// these depths span frontier sizes from hundreds to tens of thousands.
fn bench_enumeration(c: &mut Criterion) {
    let (g, protocol) = builtins::spin1_x();
    let eff = g.effective(&protocol).unwrap();
    let init = Initial::Density(DensityMatrix::uniform(eff.dim()));
    let options = EnumerationOptions::default();

    let mut group = c.benchmark_group("enumerate_levels");
    for l_max in [12usize, 16, 20, 24] {
        group.bench_with_input(BenchmarkId::new("sequential", l_max), &l_max, |b, &l| {
            b.iter(|| enumerate_levels_sequential(&eff, &init, l, &options).unwrap());
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", l_max), &l_max, |b, &l| {
            b.iter(|| enumerate_levels(&eff, &init, l, &options).unwrap());
        });
    }
    group.finish();
}

/// Seeded Monte Carlo trajectories with projective collapse.
fn bench_sampling(c: &mut Criterion) {
    let (g, protocol) = builtins::spin1_y();
    let mut group = c.benchmark_group("sample_trajectory");
    for n in [10_000usize, 100_000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| sample_trajectory(&g, &protocol, n, 1).unwrap());
        });
    }
    group.finish();
}

criterion_group!(benches, bench_enumeration, bench_sampling);
criterion_main!(benches);
