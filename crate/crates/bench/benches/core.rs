use std::hint::black_box;

use cmc_core::geometry::GridSpec;
use cmc_core::killing::{vision_numbers, KillingField, KillingKind};
use cmc_core::spectral::{analytic_index, numeric_spectrum, SpectrumOptions};
use cmc_core::weierstrass::catalog::{self, Example};
use cmc_core::{cplx, integrate_frame, Path};
use criterion::{criterion_group, criterion_main, Criterion};

fn frames(c: &mut Criterion) {
    let data = catalog::dual_enneper();
    let path = Path::segment(cplx(0.0, 0.0), cplx(0.6, 0.8)).unwrap();
    c.bench_function("integrate_frame/enneper |z|=1", |b| b.iter(|| integrate_frame(black_box(&data), &path).unwrap()));
}

fn meshes(c: &mut Criterion) {
    let grid = GridSpec::Annulus { r: [0.01, 100.0], nr: 40, ntheta: 32, theta: None };
    let ex = Example::CatenoidCousin { mu: 0.5 };
    c.bench_function("mesh/catenoid cousin 40x32", |b| b.iter(|| ex.mesh(black_box(&grid)).unwrap()));
    let mesh = ex.mesh(&grid).unwrap();
    let field = KillingField::new(KillingKind::Dilation);
    c.bench_function("vision_numbers/dilation 40x32", |b| {
        b.iter(|| vision_numbers(black_box(&mesh), &field, 1e-6).unwrap())
    });
}

fn spectra(c: &mut Criterion) {
    let mut g = c.benchmark_group("spectrum");
    g.sample_size(10);
    let opts = SpectrumOptions { cutoff: 3.0, ..SpectrumOptions::default() };
    for mu in [0.5, 2.5] {
        g.bench_function(format!("numeric μ={mu}"), |b| b.iter(|| numeric_spectrum(black_box(mu), &opts).unwrap()));
    }
    g.bench_function("analytic_index μ=2.5", |b| b.iter(|| analytic_index(black_box(2.5), 1e-3).unwrap()));
    g.finish();
}

criterion_group!(benches, frames, meshes, spectra);
criterion_main!(benches);
