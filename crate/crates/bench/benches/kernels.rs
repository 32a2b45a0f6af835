use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pertdet::alpha::{alpha_akns, alpha_kdv_det2, alpha_kdv_series, AknsSign, DEFAULT_TOL};
use pertdet::evolution::{evolve, Flow, FlowSpec, Scheme};
use pertdet::norms::{besov_norm, surrogate_norm, xy_norm, xy_surrogate};
use pertdet::operators::build_sandwich;
use pertdet::{NormSpec, SurrogateFamily, XyKind};
use pertdet_bench::{complex_field, real_field};
use std::hint::black_box;

fn sandwich(c: &mut Criterion) {
    let mut group = c.benchmark_group("sandwich");
    for n in [32, 64, 128] {
        let q = real_field(n, n / 2, 1.0);
        group.bench_with_input(BenchmarkId::from_parameter(n), &q, |b, q| b.iter(|| build_sandwich(black_box(q), 5.0).unwrap()));
    }
    group.finish();
}

fn determinant(c: &mut Criterion) {
    let q = real_field(64, 16, 0.5);
    let z = complex_field(64, 16, 0.5);
    let mut group = c.benchmark_group("alpha");
    group.sample_size(20);
    group.bench_function("kdv_series", |b| b.iter(|| alpha_kdv_series(black_box(&q), 5.0, DEFAULT_TOL).unwrap()));
    group.bench_function("kdv_det2", |b| b.iter(|| alpha_kdv_det2(black_box(&q), 5.0).unwrap()));
    group.bench_function("akns_series", |b| b.iter(|| alpha_akns(black_box(&z), 8.0, AknsSign::Plus, DEFAULT_TOL).unwrap()));
    group.finish();
}

fn stepping(c: &mut Criterion) {
    let q = real_field(64, 3, 0.2);
    let z = complex_field(64, 3, 0.2);
    let mut group = c.benchmark_group("evolve_100_steps");
    group.sample_size(20);
    for scheme in [Scheme::Etdrk4, Scheme::IntegratingFactorRk4] {
        let kdv = FlowSpec::new(Flow::Kdv, 1e-5, 1e-3).with_scheme(scheme);
        let nls = FlowSpec::new(Flow::NlsPlus, 1e-5, 1e-3).with_scheme(scheme);
        group.bench_function(format!("kdv_{scheme:?}"), |b| b.iter(|| evolve(black_box(&q), &kdv).unwrap()));
        group.bench_function(format!("nls_{scheme:?}"), |b| b.iter(|| evolve(black_box(&z), &nls).unwrap()));
    }
    group.finish();
}

fn norms(c: &mut Criterion) {
    let q = real_field(64, 64, 1.0);
    let spec = NormSpec::new(-0.5, 2.0, 1.0).unwrap();
    let mut group = c.benchmark_group("norms");
    group.bench_function("besov", |b| b.iter(|| besov_norm(black_box(&q), -0.5, 2.0).unwrap()));
    group.bench_function("besov1_surrogate", |b| b.iter(|| surrogate_norm(black_box(&q), &spec, SurrogateFamily::Besov1).unwrap()));
    group.bench_function("x_norm", |b| b.iter(|| xy_norm(black_box(&q), 2.0, XyKind::X).unwrap()));
    group.bench_function("x_surrogate", |b| b.iter(|| xy_surrogate(black_box(&q), 2.0, XyKind::X).unwrap()));
    group.finish();
}

criterion_group!(benches, sandwich, determinant, stepping, norms);
criterion_main!(benches);
