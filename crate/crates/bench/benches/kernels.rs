use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nlconj::extreal::ratio;
use nlconj::geometry::{discrete_legendre_1d, exp_local_conjugate, LegendreMethod};
use nlconj::group::inf_convolution;
use nlconj::{biconjugate, conjugate_all, regularize};
use nlconj_bench::{circle_instance, family_instance, function_pair, group_instance, legendre_instance};

fn conjugate(c: &mut Criterion) {
    let mut g = c.benchmark_group("conjugate_all");
    for n in [16, 256, 4096] {
        let (f, phi) = function_pair(n, 1);
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| b.iter(|| conjugate_all(black_box(&f), &phi)));
    }
    g.finish();
}

fn regularization(c: &mut Criterion) {
    let mut g = c.benchmark_group("regularize");
    for (n, m) in [(16, 4), (128, 16), (512, 32)] {
        let (f, family) = family_instance(n, m, 2);
        let id = format!("{n}x{m}");
        g.bench_function(BenchmarkId::new("regularize", &id), |b| b.iter(|| regularize(black_box(&f), &family)));
        g.bench_function(BenchmarkId::new("biconjugate", &id), |b| b.iter(|| biconjugate(black_box(&f), &family)));
    }
    g.finish();
}

fn legendre(c: &mut Criterion) {
    let mut g = c.benchmark_group("legendre_1d");
    for n in [64, 512, 2048] {
        let (points, values, slopes) = legendre_instance(n, n, 3);
        for (name, method) in [("fast", LegendreMethod::Fast), ("brute", LegendreMethod::Brute)] {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, _| {
                b.iter(|| discrete_legendre_1d(black_box(&points), &values, &slopes, method))
            });
        }
    }
    g.finish();
}

fn circle(c: &mut Criterion) {
    let mut g = c.benchmark_group("circle_local_conjugate");
    for n in [31, 101, 401] {
        let (grid, f) = circle_instance(n, 4);
        let slope = ratio(3, 2);
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| exp_local_conjugate(&grid, black_box(&f), n / 3, &slope))
        });
    }
    g.finish();
}

fn infconv(c: &mut Criterion) {
    let mut g = c.benchmark_group("inf_convolution");
    for radius in [8, 32, 128] {
        let (f, h) = group_instance(radius, 5);
        g.bench_with_input(BenchmarkId::from_parameter(radius), &radius, |b, _| {
            b.iter(|| inf_convolution(black_box(&f), &h))
        });
    }
    g.finish();
}

criterion_group!(benches, conjugate, regularization, legendre, circle, infconv);
criterion_main!(benches);
