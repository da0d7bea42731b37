use std::hint::black_box;

use cdtorus::adjoint::{generated_rank, AdjointGeneratorSet};
use cdtorus::cayley_dickson::{cd_double, octonions};
use cdtorus::elliptic::{j_invariant, DEFAULT_TRUNCATION};
use cdtorus::linalg::DEFAULT_MAX_PRODUCTS;
use cdtorus::tensor::build_b;
use cdtorus::torus::{commutant_rank, rho_image_rank};
use cdtorus::{LatticeBasis2D, RankPolicy, TorusModel};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn tables(c: &mut Criterion) {
    c.bench_function("cd_double sedenions", |b| {
        b.iter(|| cd_double(black_box(&octonions())))
    });
    c.bench_function("build B(1,1)", |b| {
        b.iter(|| build_b(black_box(1), black_box(1)).unwrap())
    });
}

fn ranks(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    group.sample_size(10);
    let policy = RankPolicy::default();
    let octonion_gens = AdjointGeneratorSet::for_algebra(&octonions());
    group.bench_function("generated O", |b| {
        b.iter(|| generated_rank(&octonion_gens, DEFAULT_MAX_PRODUCTS, &policy).unwrap())
    });
    for (p, q) in [(1, 0), (0, 1), (2, 0), (1, 1)] {
        let t = TorusModel::new(build_b(p, q).unwrap()).unwrap();
        let id = format!("({p},{q})");
        group.bench_with_input(BenchmarkId::new("commutant", &id), &t, |b, t| {
            b.iter(|| commutant_rank(t.complex_structure(), &policy).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("rho_image", &id), &t, |b, t| {
            b.iter(|| rho_image_rank(t, DEFAULT_MAX_PRODUCTS, &policy).unwrap())
        });
    }
    group.finish();
}

fn elliptic(c: &mut Criterion) {
    let lattice = LatticeBasis2D::square();
    c.bench_function("j Z[i] N=100", |b| {
        b.iter(|| j_invariant(black_box(&lattice), DEFAULT_TRUNCATION).unwrap())
    });
}

criterion_group!(benches, tables, ranks, elliptic);
criterion_main!(benches);
