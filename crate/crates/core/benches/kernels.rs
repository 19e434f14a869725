//! Parallel kernels on one rayon thread versus the default pool. Build with
//! `--no-default-features` to measure the sequential fallback instead.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use grp_core::cocycle::{carry_cocycle, homogeneous_from_inhomogeneous};
use grp_core::enumerate::Limits;
use grp_core::group::FiniteGroup;
use grp_core::presentation::Presentation;
use grp_core::tensor::tensor_square;
use std::hint::black_box;

fn binary_tetrahedral() -> FiniteGroup {
    let p = Presentation::parse("< x, y | x y x = y x y, y = x^-3 y x^3, x^3 >").unwrap();
    FiniteGroup::from_presentation(&p, Limits::default()).unwrap()
}

fn z6_squared() -> FiniteGroup {
    FiniteGroup::direct_product(&FiniteGroup::cyclic(6), &FiniteGroup::cyclic(6))
}

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let mut pools = vec![("1-thread", rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap())];
    if cfg!(feature = "parallel") {
        pools.push(("default-pool", rayon::ThreadPoolBuilder::new().build().unwrap()));
    }
    pools
}

fn kernels(c: &mut Criterion) {
    let h = binary_tetrahedral();
    let z66 = z6_squared();
    let t66 = tensor_square(&z66, Limits::default()).unwrap();
    let order12 = homogeneous_from_inhomogeneous(&carry_cocycle(12)).unwrap();
    let mode = if cfg!(feature = "parallel") { "rayon" } else { "sequential" };

    let mut group = c.benchmark_group(format!("kernels/{mode}"));
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new("tensor_square_H", name), |b| {
            b.iter(|| pool.install(|| tensor_square(black_box(&h), Limits::default()).unwrap()))
        });
        group.bench_function(BenchmarkId::new("fingerprint_Z6xZ6_tensor", name), |b| {
            b.iter(|| pool.install(|| black_box(t66.carrier()).fingerprint()))
        });
        group.bench_function(BenchmarkId::new("verify_relations_Z6xZ6", name), |b| {
            b.iter(|| pool.install(|| black_box(&t66).verify_relations().unwrap()))
        });
        group.bench_function(BenchmarkId::new("circular_axioms_Z12", name), |b| {
            b.iter(|| pool.install(|| black_box(&order12).validate().unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
