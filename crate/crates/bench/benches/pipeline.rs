//! Stage-level benchmarks on the lambda = (1..8) Vandermonde case. The
//! Groebner stage dominates; the prime-field variants isolate coefficient
//! growth from combinatorial cost.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use jacring::charvar::charvar_first;
use jacring::cohomology::{build_jacobian_ring, compute_graded_basis, JacobianRing};
use jacring::higgs::compute_theta_matrices;
use jacring::matrixgen::vandermonde_1_to_8;
use jacring::scalar::FieldConfig;
use jacring::symmetric::run_plethysm;

fn fixture(field: FieldConfig) -> JacobianRing {
    let a = vandermonde_1_to_8(FieldConfig::Rationals)
        .to_field(field)
        .unwrap();
    build_jacobian_ring(&a, field).unwrap()
}

fn bench_groebner(c: &mut Criterion) {
    let mut g = c.benchmark_group("groebner");
    g.sample_size(10);
    let q = FieldConfig::Rationals;
    let p = FieldConfig::prime_field(32003).unwrap();
    g.bench_function("jacobian_ideal_q", |b| b.iter(|| fixture(q)));
    g.bench_function("jacobian_ideal_gfp", |b| b.iter(|| fixture(p)));
    g.finish();
}

fn bench_basis_scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("basis_scan");
    g.sample_size(10);
    let jr = fixture(FieldConfig::Rationals);
    g.bench_function("graded_basis_q", |b| {
        b.iter(|| compute_graded_basis(&jr, false).unwrap())
    });
    g.bench_function("graded_basis_q_with_top", |b| {
        b.iter(|| compute_graded_basis(&jr, true).unwrap())
    });
    g.finish();
}

fn bench_higgs_and_plethysm(c: &mut Criterion) {
    let mut g = c.benchmark_group("higgs");
    g.sample_size(10);
    let jr = fixture(FieldConfig::Rationals);
    let basis = compute_graded_basis(&jr, false).unwrap();
    g.bench_function("theta_matrices", |b| {
        b.iter(|| compute_theta_matrices(&jr, &basis).unwrap())
    });
    let thetas = compute_theta_matrices(&jr, &basis).unwrap();
    g.bench_function("plethysm", |b| {
        b.iter_batched(
            || thetas.clone(),
            |t| run_plethysm(&t).unwrap(),
            BatchSize::SmallInput,
        )
    });
    g.bench_function("charvar_first_equations", |b| {
        b.iter(|| charvar_first(&jr, &basis).unwrap())
    });
    g.finish();
}

criterion_group!(
    benches,
    bench_groebner,
    bench_basis_scan,
    bench_higgs_and_plethysm
);
criterion_main!(benches);
