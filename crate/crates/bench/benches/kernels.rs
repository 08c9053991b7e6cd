//! Criterion benchmarks for the hot numerical kernels and a small
//! end-to-end solve.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use utmfrac::faddeeva::erfcx;
use utmfrac::fractional::{rl_derivative, DifferintegralConfig, Operand, Order};
use utmfrac::functions::FunctionHandle;
use utmfrac::gamma::gamma;
use utmfrac::region::gamma_contour;
use utmfrac::solve::solve;
use utmfrac::suites::model_problem;
use utmfrac::transform::{half_fourier, QuadratureSpec};

fn bench_gamma(c: &mut Criterion) {
    c.bench_function("gamma_real", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            let mut x = -19.3;
            while x < 40.0 {
                acc += gamma(black_box(x));
                x += 0.37;
            }
            acc
        })
    });
}

fn bench_erfcx(c: &mut Criterion) {
    let pts: Vec<Complex64> = (0..128)
        .map(|i| Complex64::new(-3.0 + 0.05 * i as f64, 0.8 + 0.01 * i as f64))
        .collect();
    c.bench_function("erfcx_complex_128", |b| {
        b.iter(|| pts.iter().map(|&z| erfcx(black_box(z))).sum::<Complex64>())
    });
}

fn bench_rl_derivative(c: &mut Criterion) {
    let f = |x: f64| Complex64::new((-x).exp(), 0.0);
    let cfg = DifferintegralConfig::default();
    let order = Order::new(1.5).unwrap();
    c.bench_function("rl_derivative_2048", |b| {
        b.iter(|| rl_derivative(Operand::Fn(&f), order, black_box(2.0), 0.0, &cfg).unwrap().value)
    });
}

fn bench_half_fourier(c: &mut Criterion) {
    let f = FunctionHandle::gaussian_x(1.0).unwrap();
    let spec = QuadratureSpec::default();
    let k = Complex64::new(3.0, -0.7);
    c.bench_function("half_fourier_gaussian_closed", |b| {
        b.iter(|| half_fourier(&f, black_box(k), &spec).unwrap())
    });
}

fn bench_contour(c: &mut Criterion) {
    c.bench_function("gamma_contour_320", |b| {
        b.iter(|| gamma_contour(black_box(2.2), 200.0, 0.05, 320).unwrap())
    });
}

fn bench_solve_eval(c: &mut Criterion) {
    let field = solve(&model_problem(2.0)).unwrap();
    field.prewarm(&[0.25]).unwrap();
    c.bench_function("field_eval_point", |b| {
        b.iter(|| field.eval(black_box(1.0), 0.25).unwrap().value)
    });
}

criterion_group!(
    benches,
    bench_gamma,
    bench_erfcx,
    bench_rl_derivative,
    bench_half_fourier,
    bench_contour,
    bench_solve_eval
);
criterion_main!(benches);
