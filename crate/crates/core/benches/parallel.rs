//! Parallel-vs-sequential throughput of the two data-parallel kernels:
//! midpoint action quadrature and the subsolution family scan.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use euler_action::action::{self, ActionWindow};
use euler_action::fixture;
use euler_action::spacetime;
use euler_action::subsolution::{self, FamilySeed};
use euler_action::Tolerances;

fn bench_action_quadrature(c: &mut Criterion) {
    let fx = fixture::counterexample();
    let tol = Tolerances::default();
    let sol = spacetime::build_glued_solution(&fx.data, &fx.sub, 0.5, 1.0, &tol).unwrap();
    let window = ActionWindow::new(1.0, fx.sub.mu1 * 0.5, 1.0).unwrap();

    let mut group = c.benchmark_group("action_quadrature");
    group.sample_size(10);
    for grid in [(301usize, 301usize), (601, 601)] {
        group.bench_with_input(
            BenchmarkId::new("parallel", format!("{}x{}", grid.0, grid.1)),
            &grid,
            |b, &grid| b.iter(|| action::action_quadrature(&sol, &window, grid).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", format!("{}x{}", grid.0, grid.1)),
            &grid,
            |b, &grid| b.iter(|| action::action_quadrature_seq(&sol, &window, grid).unwrap()),
        );
    }
    group.finish();
}

fn bench_family_scan(c: &mut Criterion) {
    let fx = fixture::counterexample();
    let tol = Tolerances::default();
    let seed = FamilySeed::from(&fx.sub);
    let rho_range = (2.5, 3.5);
    let c1_range = (fx.sub.c1 * 0.95, fx.sub.c1 * 1.05);

    let mut group = c.benchmark_group("family_scan");
    group.sample_size(10);
    let grid = (24usize, 24usize);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            subsolution::scan_family(&fx.data, rho_range, c1_range, grid, &seed, |_| None, &tol)
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            subsolution::scan_family_seq(&fx.data, rho_range, c1_range, grid, &seed, |_| None, &tol)
        })
    });
    group.finish();
}

criterion_group!(benches, bench_action_quadrature, bench_family_scan);
criterion_main!(benches);
