//! Microbenchmarks for the numeric kernels: exact table generation, zeta
//! values, polylogarithms, the complex Gamma function, and a small Meijer G
//! contour evaluation.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use meijerforms::coeffs::{coeff_polys, coeff_table, tail_polys};
use meijerforms::exact::{r0_eval, RParams};
use meijerforms::gamma::gamma;
use meijerforms::meijer::{eval_g, Contour, GParams};
use meijerforms::numerics::{omega_normalize, polylog, zeta_int};
use meijerforms::{APComplex, Float, PrecisionBudget, Rational};

fn bench_coeff_polys(c: &mut Criterion) {
    // coeff_table itself is cached per (nu, delta); the polynomial
    // assembly from the table is recomputed on every call.
    let table = coeff_table(3, 3).unwrap();
    c.bench_function("coeff_polys + tail_polys nu=3 delta=3", |b| {
        b.iter(|| {
            black_box(coeff_polys(black_box(&table)));
            black_box(tail_polys(black_box(&table)));
        })
    });
}

fn bench_r0_eval(c: &mut Criterion) {
    let params = RParams::new(2, 3).unwrap();
    let t = Rational::from((101, 7));
    c.bench_function("r0_eval nu=2 delta=3", |b| {
        b.iter(|| black_box(r0_eval(black_box(&t), &params).unwrap()))
    });
}

fn bench_zeta(c: &mut Criterion) {
    let budget = PrecisionBudget::new(256);
    c.bench_function("zeta_int(3) 256 bits", |b| {
        b.iter(|| black_box(zeta_int(black_box(3), &budget).unwrap()))
    });
}

fn bench_polylog(c: &mut Criterion) {
    let budget = PrecisionBudget::new(256);
    let w = APComplex::from_f64(0.5, 0.25, budget.work_prec());
    c.bench_function("polylog L3(0.5+0.25i) 256 bits", |b| {
        b.iter(|| black_box(polylog(3, black_box(&w), &budget).unwrap()))
    });
}

fn bench_gamma(c: &mut Criterion) {
    let w = APComplex::from_f64(3.25, -1.5, 320);
    c.bench_function("gamma(3.25-1.5i) 256 bits", |b| {
        b.iter(|| black_box(gamma(black_box(&w), 256)))
    });
}

fn bench_eval_g(c: &mut Criterion) {
    // G^{1,1}_{1,2} with a = [1/2], b = [0, 1/3] at z = 1/2: three simple
    // right poles plus their geometric tail.
    let params = GParams::new(
        1,
        1,
        vec![Rational::from((1, 2))],
        vec![Rational::new(), Rational::from((1, 3))],
    )
    .unwrap();
    let budget = PrecisionBudget::new(64);
    let z = omega_normalize(&APComplex::new(
        Float::with_val(160, 0.5),
        Float::with_val(160, 0),
    ))
    .unwrap();
    c.bench_function("eval_g 1-1-1-2 right loop 64 bits", |b| {
        b.iter(|| black_box(eval_g(&params, black_box(&z), Contour::L1, &budget).unwrap()))
    });
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(20);
    targets = bench_coeff_polys, bench_r0_eval, bench_zeta, bench_polylog,
              bench_gamma, bench_eval_g
}
criterion_main!(kernels);
