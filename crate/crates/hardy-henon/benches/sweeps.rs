//! Criterion benches for the data-parallel sweep entry points. Run once with
//! the default features (rayon) and once with `--no-default-features` for
//! the sequential baseline:
//!
//! ```text
//! cargo bench -p hardy-henon
//! cargo bench -p hardy-henon --no-default-features
//! ```

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use hardy_henon::atlas::{atlas_export, Domain, RawParams};
use hardy_henon::lienard::{portrait, LienardSystem, SeedPolicy};
use hardy_henon::radial::{nonexistence_scan, default_shot_grid};
use hardy_henon::atlas::ProblemParams;
use std::hint::black_box;

fn atlas_grid(count: usize) -> Vec<RawParams> {
    let side = (count as f64).sqrt().ceil() as usize;
    let mut out = Vec::with_capacity(side * side);
    for i in 0..side {
        for j in 0..side {
            out.push(RawParams {
                n: 1 + ((i + j) % 4) as u32,
                p: -8.0 + 16.0 * i as f64 / side as f64,
                sigma: -8.0 + 16.0 * j as f64 / side as f64,
                domain: Domain::FullSpace,
            });
        }
    }
    out
}

fn bench_atlas_sweep(c: &mut Criterion) {
    let grid = atlas_grid(40_000);
    c.bench_function("atlas_export_40k", |b| {
        b.iter(|| black_box(atlas_export(black_box(&grid)).unwrap()))
    });
}

fn bench_portrait(c: &mut Criterion) {
    let sys = LienardSystem::new(2.0 / 3.0, 4.0).unwrap();
    let policy = SeedPolicy::Grid {
        v: (0.3, 1.7),
        vdot: (-0.2, 0.2),
        nv: 4,
        nvdot: 4,
    };
    c.bench_function("portrait_16_seeds", |b| {
        b.iter_batched(
            || policy.clone(),
            |p| black_box(portrait(&sys, &p, 60.0, 1e-8)),
            BatchSize::SmallInput,
        )
    });
}

fn bench_radial_scan(c: &mut Criterion) {
    let params = ProblemParams::new(3, 3.0, 0.0, Domain::FullSpace).unwrap();
    let grid = default_shot_grid();
    c.bench_function("radial_scan_25_shots", |b| {
        b.iter(|| black_box(nonexistence_scan(&params, &grid, 100.0, 1e-8).unwrap()))
    });
}

criterion_group!(benches, bench_atlas_sweep, bench_portrait, bench_radial_scan);
criterion_main!(benches);
