use std::hint::black_box;

use affine_tail::bounds::{cor3_rhs, invert_epsilon, rs13_rhs, theorem1_rhs, EpsilonFamily};
use affine_tail::certify::{certify_grid, chernoff_step, g_value, z0_solve, CertGridSpec, GPoint};
use affine_tail::simulate::{ci_upper, enumerate_exact, estimate_tail, ProcessSpec, DEFAULT_LEVEL};
use affine_tail::{bounds::theorem1_threshold, MeanKnownQuery, Sign, TheoremQuery};
use criterion::{criterion_group, criterion_main, Criterion};

fn bounds(c: &mut Criterion) {
    let q = TheoremQuery::new(10_000, 0.5, 2.0).unwrap();
    c.bench_function("theorem1_rhs", |b| b.iter(|| theorem1_rhs(black_box(&q))));
    let k = MeanKnownQuery::new(1_000_000, 0.95, 1.0, Sign::Minus).unwrap();
    c.bench_function("cor3_rhs", |b| b.iter(|| cor3_rhs(black_box(&k))));
    let means: Vec<f64> = (0..1000).map(|i| 0.05 + 0.9 * i as f64 / 1000.0).collect();
    c.bench_function("rs13_rhs/1000 means", |b| {
        b.iter(|| rs13_rhs(black_box(&means), 1.0, Sign::Plus))
    });
    let fam = EpsilonFamily::Cor3 {
        n: 10_000,
        p: 0.95,
        sign: Sign::Minus,
    };
    c.bench_function("invert_epsilon/cor3", |b| {
        b.iter(|| invert_epsilon(black_box(&fam), 1e-6))
    });
}

fn certify(c: &mut Criterion) {
    let p = GPoint::new(1.0, 0.3, 2.5).unwrap();
    c.bench_function("g_value", |b| b.iter(|| g_value(black_box(&p))));
    c.bench_function("z0_solve", |b| b.iter(|| z0_solve(black_box(0.7))));
    c.bench_function("chernoff_step", |b| {
        b.iter(|| chernoff_step(black_box(2.0), black_box(0.7)))
    });
    let coarse = CertGridSpec {
        y_step: 0.1,
        x_step: 0.1,
        ..Default::default()
    };
    c.bench_function("certify_grid/coarse", |b| b.iter(|| certify_grid(black_box(&coarse))));
}

fn simulate(c: &mut Criterion) {
    let q = TheoremQuery::new(100, 0.5, 1.0).unwrap();
    let thr = theorem1_threshold(&q);
    let bound = theorem1_rhs(&q).unwrap();
    let spec = ProcessSpec::MeanReverting { p0: 0.8, kappa: 0.5 };
    let mut group = c.benchmark_group("simulate");
    group.sample_size(20);
    group.bench_function("estimate_tail/1e4 trials x 100 steps", |b| {
        b.iter(|| estimate_tail(&spec, 100, 10_000, &thr, &bound, black_box(1), DEFAULT_LEVEL))
    });
    let q12 = TheoremQuery::new(12, 0.5, 1.0).unwrap();
    group.bench_function("enumerate_exact/n=12", |b| {
        b.iter(|| enumerate_exact(&spec, 12, black_box(&theorem1_threshold(&q12))))
    });
    group.bench_function("ci_upper/1e5 trials", |b| {
        b.iter(|| ci_upper(black_box(37), 100_000, 0.99))
    });
    group.finish();
}

criterion_group!(benches, bounds, certify, simulate);
criterion_main!(benches);
