use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use jgap_bench::{fading_scenario, skewed_scenario, table_scenario};
use jgap_core::{applications, bounds, oracle};

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    for (name, (dist, phi)) in [
        ("uniform_neg_exp", table_scenario()),
        ("exp_log1p", fading_scenario()),
        ("beta_exp_scaled", skewed_scenario()),
    ] {
        group.bench_function(format!("expect/{name}"), |b| {
            b.iter(|| oracle::expect(black_box(&dist), black_box(&phi), 1e-9).unwrap())
        });
    }
    let (dist, phi) = table_scenario();
    group.bench_function("expect_mc/uniform_neg_exp_10k", |b| {
        b.iter(|| oracle::expect_mc(black_box(&dist), black_box(&phi), 10_000, 42).unwrap())
    });
    group.bench_function("integral_remainder/uniform_neg_exp", |b| {
        b.iter(|| oracle::integral_remainder_gap(black_box(&dist), black_box(&phi), 1e-7).unwrap())
    });
    group.finish();
}

fn bench_bounds(c: &mut Criterion) {
    let mut group = c.benchmark_group("bounds");
    let (dist, phi) = table_scenario();
    group.bench_function("variance_sandwich", |b| {
        b.iter(|| bounds::variance_sandwich(black_box(&phi), black_box(&dist)).unwrap())
    });
    group.bench_function("gruss_second_order", |b| {
        b.iter(|| bounds::gruss_second_order(black_box(&phi), black_box(&dist)).unwrap())
    });
    group.bench_function("green_gap", |b| {
        b.iter(|| bounds::green_gap(black_box(&phi), black_box(&dist), 1e-8).unwrap())
    });
    group.bench_function("fourth_order", |b| {
        b.iter(|| bounds::fourth_order(black_box(&phi), black_box(&dist)).unwrap())
    });
    let (skew_dist, skew_phi) = skewed_scenario();
    group.bench_function("fourth_order/beta", |b| {
        b.iter(|| bounds::fourth_order(black_box(&skew_phi), black_box(&skew_dist)).unwrap())
    });
    group.finish();
}

fn bench_applications(c: &mut Criterion) {
    let mut group = c.benchmark_group("applications");
    group.bench_function("rayleigh_capacity/snr_10", |b| {
        b.iter(|| applications::rayleigh_capacity(black_box(10.0)).unwrap())
    });
    let exp = jgap_core::DistributionSpec::exponential(1.0).unwrap();
    group.bench_function("entropy_bounds/exp", |b| {
        b.iter(|| applications::entropy_bounds(black_box(&exp)).unwrap())
    });
    group.finish();
}

fn bench_moments(c: &mut Criterion) {
    let mut group = c.benchmark_group("distributions");
    let beta = jgap_core::DistributionSpec::beta(2.0, 5.0).unwrap();
    group.bench_function("moments/beta", |b| {
        b.iter(|| black_box(&beta).moments().unwrap())
    });
    group.bench_function("cdf/beta", |b| b.iter(|| black_box(&beta).cdf(0.3)));
    group.finish();
}

criterion_group!(
    benches,
    bench_oracle,
    bench_bounds,
    bench_applications,
    bench_moments
);
criterion_main!(benches);
