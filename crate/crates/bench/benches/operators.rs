//! Benchmarks of the hot paths: eigendecomposition, symbol composition,
//! and the two filtering routes.

use std::hint::black_box;
use std::time::Duration;

use boxkernel::{
    box_product, decompose, filter_operator, filter_pointwise, gft, BoxPolynomial, CatalogKernel,
    Complex64, FilterSpec, Grid, GridKernel, KernelTag, RkhsContext, Signal,
};
use criterion::{criterion_group, criterion_main, Criterion};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn bench_operators(c: &mut Criterion) {
    let grid = Grid::new(0.0, 1.0, 256).unwrap();
    let graphon = GridKernel::sample(&grid, &CatalogKernel::Min, KernelTag::Graphon).unwrap();

    c.bench_function("decompose_min_256", |b| {
        b.iter(|| decompose(black_box(&graphon), Some(16)).unwrap())
    });

    c.bench_function("box_product_256", |b| {
        b.iter(|| box_product(black_box(&graphon), black_box(&graphon)).unwrap())
    });

    let small_grid = Grid::new(0.0, 1.0, 128).unwrap();
    let w = GridKernel::sample(&small_grid, &CatalogKernel::Min, KernelTag::Graphon).unwrap();
    let kernel = box_product(&w, &w)
        .unwrap()
        .retag(KernelTag::Kernel)
        .unwrap();
    let ctx = RkhsContext::new(decompose(&kernel, None).unwrap(), None).unwrap();
    let poly = BoxPolynomial::new(vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(-0.5, 0.0),
        Complex64::new(0.25, 0.0),
    ]);
    let spec = FilterSpec::new(poly, kernel.clone()).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(42);
    let f = Signal::random(&small_grid, &mut rng);

    c.bench_function("filter_operator_128", |b| {
        b.iter(|| filter_operator(black_box(&spec), black_box(&f)).unwrap())
    });

    c.bench_function("filter_pointwise_128", |b| {
        b.iter(|| filter_pointwise(black_box(&spec), black_box(&ctx), black_box(&f)).unwrap())
    });

    let dec = decompose(&w, Some(32)).unwrap();
    c.bench_function("gft_128x32", |b| {
        b.iter(|| gft(black_box(&dec), black_box(&f)).unwrap())
    });
}

fn configured() -> Criterion {
    Criterion::default()
        .warm_up_time(Duration::from_millis(500))
        .measurement_time(Duration::from_secs(2))
        .sample_size(20)
}

criterion_group! {
    name = benches;
    config = configured();
    targets = bench_operators
}
criterion_main!(benches);
