//! Sequential vs rayon execution of the per-N sweeps, plus the two DFT
//! backends on a single right-hand-side evaluation.

use std::hint::black_box;
use std::time::Duration;

use cmspin::analysis::{error_norm_sweep, viscosity_sweep, RunSpec};
use cmspin::data::random_spins;
use cmspin::{rhs_spin, DftBackend, Execution, InitialData, LatticeGeometry};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bench_error_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("error_norm_sweep");
    group
        .sample_size(10)
        .measurement_time(Duration::from_secs(5));
    let run = RunSpec {
        t_end: 0.25,
        snapshots: 5,
        ..RunSpec::default()
    };
    let data = InitialData::finite_regularity();
    let sizes = [33, 65, 129, 257];
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "33..257"), |b| {
            b.iter(|| error_norm_sweep(black_box(&data), &sizes, &run, 0.1, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_viscosity_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("viscosity_sweep");
    group
        .sample_size(10)
        .measurement_time(Duration::from_secs(5));
    let run = RunSpec {
        t_end: 0.1,
        snapshots: 2,
        ..RunSpec::default()
    };
    let data = InitialData::smooth();
    let eps = [1e-1, 1e-2, 1e-3];
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, 63), |b| {
            b.iter(|| viscosity_sweep(black_box(&data), 63, &eps, &run, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_rhs_backends(c: &mut Criterion) {
    let mut group = c.benchmark_group("rhs_spin");
    for size in [31, 129, 513] {
        for backend in [DftBackend::Fft, DftBackend::Direct] {
            let g = LatticeGeometry::with_backend(size, backend).unwrap();
            let s = random_spins(&g, 1);
            group.bench_with_input(
                BenchmarkId::new(format!("{backend:?}"), size),
                &s,
                |b, s| b.iter(|| rhs_spin(black_box(s), 0.0)),
            );
        }
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_error_sweep,
    bench_viscosity_sweep,
    bench_rhs_backends
);
criterion_main!(benches);
