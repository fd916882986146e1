//! Benchmarks for the numerical kernels: parsing/evaluation, the special
//! functions, quadrature, the fractional operators, and one full bound.
//!
//! Run with: cargo bench -p hhfrac-bench

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hhfrac::bounds::{thm5_rhs, TheoremParams, Variant};
use hhfrac::expr::FuncSpec;
use hhfrac::fracint::{hh_gap, j_plus, lemma1_rhs};
use hhfrac::hypotheses::{check_slog_second, GridSpec};
use hhfrac::quad::{integrate, integrate_power_kernel, SingularEnd};
use hhfrac::special::{gamma, psi_cap};
use hhfrac_bench::{quad_config, reference_function, reference_params};

fn bench_expr(c: &mut Criterion) {
    c.bench_function("expr/parse", |b| {
        b.iter(|| FuncSpec::new(black_box("exp(x/2)*x^2 - sin(x)/(x+2)"), 0.0, 1.0).unwrap())
    });
    let f = reference_function();
    c.bench_function("expr/eval_dual", |b| {
        b.iter(|| f.eval_dual(black_box(0.6)).unwrap())
    });
}

fn bench_special(c: &mut Criterion) {
    c.bench_function("special/gamma", |b| {
        b.iter(|| gamma(black_box(2.5)).unwrap())
    });
    c.bench_function("special/psi_cap", |b| {
        b.iter(|| psi_cap(black_box(0.37)).unwrap())
    });
}

fn bench_quad(c: &mut Criterion) {
    let cfg = quad_config();
    c.bench_function("quad/integrate_smooth", |b| {
        b.iter(|| integrate(|t| black_box(t).exp(), 0.0, 1.0, &cfg).unwrap())
    });
    c.bench_function("quad/integrate_power_kernel", |b| {
        b.iter(|| {
            integrate_power_kernel(
                |t| black_box(t) * t,
                0.0,
                1.0,
                0.5,
                SingularEnd::Upper,
                &cfg,
            )
            .unwrap()
        })
    });
}

fn bench_fracint(c: &mut Criterion) {
    let f = reference_function();
    let p = reference_params(0.5);
    let cfg = quad_config();
    c.bench_function("fracint/j_plus", |b| {
        b.iter(|| j_plus(&f, &p, 1.0, &cfg).unwrap())
    });
    c.bench_function("fracint/hh_gap", |b| {
        b.iter(|| hh_gap(&f, &p, &cfg).unwrap())
    });
    c.bench_function("fracint/lemma1_rhs", |b| {
        b.iter(|| lemma1_rhs(&f, &p, &cfg).unwrap())
    });
}

fn bench_bounds(c: &mut Criterion) {
    let f = reference_function();
    let p = reference_params(0.75);
    let cfg = quad_config();
    let tp = TheoremParams::new(1.0, 0.5, Variant::Corrected).unwrap();
    c.bench_function("bounds/thm5_rhs", |b| {
        b.iter(|| thm5_rhs(&f, &p, &tp, &cfg).unwrap())
    });
}

fn bench_hypotheses(c: &mut Criterion) {
    let f = reference_function();
    let grid = GridSpec {
        points_per_axis: 9,
        random_pairs: 50,
        seed: 42,
    };
    c.bench_function("hypotheses/check_slog_second_9x9", |b| {
        b.iter(|| {
            check_slog_second(
                |x| {
                    f.eval_dual(x)
                        .map(|d| d.derivative.abs())
                        .unwrap_or(f64::NAN)
                },
                1.0,
                (0.0, 1.0),
                &grid,
            )
            .unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_expr,
    bench_special,
    bench_quad,
    bench_fracint,
    bench_bounds,
    bench_hypotheses
);
criterion_main!(benches);
