//! Acceptance suite: one test per criterion, each printing a single
//! `acceptance N: PASS/FAIL` line (visible with `--nocapture`). Tolerances
//! and runtime budgets are pinned in the individual tests.

use meijerforms::auxfun::{
    f2_star, f3_star, f4_star, f5_vee_star, f5_star, f6_star, g_params, scale_factor,
    zeta_forms_at_one, AuxSpec, EvalPath,
};
use meijerforms::coeffs::{coeff_polys, coeff_table, f1_star_poly};
use meijerforms::exact::{r0_eval, RParams};
use meijerforms::linform::{dist_to_int, phi, scan};
use meijerforms::meijer::{eval_g, Contour, GParams};
use meijerforms::numerics::omega_normalize;
use meijerforms::{APComplex, Float, PrecisionBudget, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use std::time::Instant;

fn criterion(n: u32, desc: &str, f: impl FnOnce() -> Result<(), String>) {
    let t0 = Instant::now();
    match f() {
        Ok(()) => {
            println!("acceptance {}: PASS ({:.1} s) - {}", n, t0.elapsed().as_secs_f64(), desc);
        }
        Err(e) => {
            println!("acceptance {}: FAIL ({:.1} s) - {}: {}", n, t0.elapsed().as_secs_f64(), desc, e);
            panic!("acceptance {} failed: {}", n, e);
        }
    }
}

fn check_close(a: &APComplex, b: &APComplex, bits: u32, what: &str) -> Result<(), String> {
    let d = (a - b).abs();
    if d < Float::with_val(64, 1) >> bits {
        Ok(())
    } else {
        Err(format!(
            "{}: |difference| = {:e} exceeds 2^-{} (a = {}, b = {})",
            what,
            d.to_f64(),
            bits,
            a,
            b
        ))
    }
}

const GRID: [(u32, u32); 6] = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)];

/// `sum_k a_k (t+k)^-3 + b_k (t+k)^-2 + c_k (t+k)^-1`, exact.
fn reconstruct(t: &Rational, nu: u32, delta: u32) -> Rational {
    let table = coeff_table(nu, delta).unwrap();
    let mut acc = Rational::new();
    for k in 0..table.alpha.len() {
        let tk = t.clone() + Rational::from(k as u32);
        let inv = Rational::from(1) / tk;
        acc += table.alpha[k].clone() * inv.clone().pow(3)
            + table.beta[k].clone() * inv.clone().pow(2)
            + table.gamma[k].clone() * inv;
    }
    acc
}

#[test]
fn acceptance_01_partial_fractions_exact() {
    criterion(1, "partial-fraction reconstruction of R0^3 is exact", || {
        // Pinned spot check: t = 1, (nu, delta) = (1, 2): both sides -1/27.
        let p = RParams::new(1, 2).unwrap();
        let lhs = r0_eval(&Rational::from(1), &p).unwrap().pow(3);
        if lhs != Rational::from((-1, 27)) {
            return Err(format!("pinned R0(1;1)^3 = {} != -1/27", lhs));
        }
        if reconstruct(&Rational::from(1), 1, 2) != lhs {
            return Err("pinned reconstruction at t = 1 differs".into());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for &(nu, delta) in &GRID {
            let p = RParams::new(nu, delta).unwrap();
            let mut done = 0;
            while done < 20 {
                let num = rng.gen_range(-60i64..=60);
                let den = rng.gen_range(1i64..=12);
                let t = Rational::from((num, den));
                if p.is_pole(&t) {
                    continue;
                }
                let lhs = r0_eval(&t, &p).unwrap().pow(3);
                let rhs = reconstruct(&t, nu, delta);
                if lhs != rhs {
                    return Err(format!(
                        "mismatch at t = {} for (nu, delta) = ({}, {})",
                        t, nu, delta
                    ));
                }
                done += 1;
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_02_gamma_sum_vanishes() {
    criterion(2, "weight-1 coefficients sum to zero exactly", || {
        let t = coeff_table(1, 2).unwrap();
        if t.gamma != vec![Rational::from(-156), Rational::from(720), Rational::from(-564)] {
            return Err(format!("pinned gamma table differs: {:?}", t.gamma));
        }
        for &(nu, delta) in &GRID {
            let t = coeff_table(nu, delta).unwrap();
            if t.gamma_sum() != 0 {
                return Err(format!(
                    "gamma sum {} nonzero at (nu, delta) = ({}, {})",
                    t.gamma_sum(),
                    nu,
                    delta
                ));
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_03_alpha_poly_is_f1() {
    criterion(3, "alpha coefficient polynomial equals the f1* polynomial", || {
        let p = f1_star_poly(1, 2).unwrap();
        let want: Vec<Rational> =
            [0i64, 8, -216, 64].iter().map(|&x| Rational::from(x)).collect();
        if p.coeffs() != &want[..] {
            return Err(format!("pinned f1* coefficients differ: {:?}", p.coeffs()));
        }
        for &(nu, delta) in &GRID {
            let table = coeff_table(nu, delta).unwrap();
            let (alpha_poly, _, _) = coeff_polys(&table);
            if alpha_poly != f1_star_poly(nu, delta).unwrap() {
                return Err(format!("mismatch at (nu, delta) = ({}, {})", nu, delta));
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_04_series_closed_dual_path() {
    criterion(4, "series and closed forms of f2*, f4*, f6* agree to 2^-250", || {
        let budget = PrecisionBudget::new(256);
        for (nu, delta) in [(1u32, 2u32), (1, 3), (2, 2), (2, 3)] {
            for (zn, zd) in [(2i64, 1i64), (10, 1), (3, 2)] {
                let z = omega_normalize(&APComplex::from_rational(
                    &Rational::from((zn, zd)),
                    budget.work_prec() + 64,
                ))
                .unwrap();
                let spec = AuxSpec::new(nu, delta, z, budget).unwrap();
                for (f, name) in [
                    (f2_star as fn(&AuxSpec, EvalPath) -> _, "f2"),
                    (f4_star, "f4"),
                    (f6_star, "f6"),
                ] {
                    let a = f(&spec, EvalPath::Series).map_err(|e| e.to_string())?;
                    let b = f(&spec, EvalPath::Closed).map_err(|e| e.to_string())?;
                    check_close(
                        &a,
                        &b,
                        250,
                        &format!("{} at z = {}/{}, (nu, delta) = ({}, {})", name, zn, zd, nu, delta),
                    )?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_05_log_branch_identity() {
    criterion(5, "f5* = f5-vee* + i pi f3* with both G-routes at z = 2", || {
        let budget = PrecisionBudget::new(256);
        let z = omega_normalize(&APComplex::from_f64(2.0, 0.0, budget.work_prec() + 64))
            .unwrap();
        let spec = AuxSpec::new(1, 2, z, budget).unwrap();
        let f5 = f5_star(&spec, EvalPath::Closed).map_err(|e| e.to_string())?;
        let vee = f5_vee_star(&spec, EvalPath::Meijer).map_err(|e| e.to_string())?;
        let f3 = f3_star(&spec, EvalPath::Meijer).map_err(|e| e.to_string())?;
        let wp = budget.work_prec() + 64;
        let ipi = APComplex::new(Float::new(wp), APComplex::pi(wp));
        let rhs = &vee + &(&ipi * &f3);
        check_close(&f5, &rhs, 248, "f5* vs f5-vee* + i pi f3*")
    });
}

#[test]
fn acceptance_06_meijer_cross_checks() {
    criterion(6, "contour evaluator reproduces f1, f2 and the pole orders", || {
        let budget = PrecisionBudget::new(256);
        let wp = budget.work_prec() + 64;

        // (a) f1 polynomial at z = 1/2 through the finite right-loop sum.
        let z_half = omega_normalize(&APComplex::from_rational(&Rational::from((1, 2)), wp))
            .unwrap();
        let params = g_params(1, 2, 1).unwrap();
        let gv = eval_g(&params, &z_half, Contour::Auto, &budget).map_err(|e| e.to_string())?;
        // f1* = sign * scale * G with sign = (-1)^(nu(delta+1)) = -1, scale = 8.
        let scale = scale_factor(1, 2).unwrap() * Rational::from(-1);
        let lhs = gv.value.scale_rational(&scale);
        let rhs = f1_star_poly(1, 2)
            .unwrap()
            .eval_complex(&APComplex::from_rational(&Rational::from((1, 2)), wp));
        check_close(&lhs, &rhs, 240, "f1 polynomial vs contour at z = 1/2")?;

        // (b) f2 series vs its G-representation at z = 2.
        let z2 = omega_normalize(&APComplex::from_f64(2.0, 0.0, wp)).unwrap();
        let spec = AuxSpec::new(1, 2, z2, budget).unwrap();
        let a = f2_star(&spec, EvalPath::Series).map_err(|e| e.to_string())?;
        let b = f2_star(&spec, EvalPath::Meijer).map_err(|e| e.to_string())?;
        check_close(&a, &b, 240, "f2 series vs contour at z = 2")?;

        // (c) pole orders (1, 1, 2, 3) for the four integrands at (1, 2).
        for (m, contour, want) in [
            (1u32, Contour::L1, 1u32),
            (4, Contour::L2, 1),
            (5, Contour::L2, 2),
            (6, Contour::L2, 3),
        ] {
            let params = g_params(1, 2, m).unwrap();
            let poles = params.enumerate_poles(contour, 6).map_err(|e| e.to_string())?;
            if poles.is_empty() {
                return Err(format!("no poles found for m = {}", m));
            }
            for p in &poles {
                if p.order != want {
                    return Err(format!(
                        "m = {}: pole at {} has order {}, expected {}",
                        m, p.location, p.order, want
                    ));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_07_derivative_weights() {
    criterion(7, "derivative weight tables match finite differences of R0^3", || {
        let p = RParams::new(1, 2).unwrap();
        let table = coeff_table(1, 2).unwrap();
        let cube = |t: &Rational| -> Rational { r0_eval(t, &p).unwrap().pow(3u32).into() };

        // Exact weight sums: -d/dt R0^3 and (d/dt)^2 R0^3.
        let w4 = |t: &Rational| -> Rational {
            let mut acc = Rational::new();
            for k in 0..table.alpha.len() {
                let inv = Rational::from(1) / (t.clone() + Rational::from(k as u32));
                acc += Rational::from(3) * table.alpha[k].clone() * inv.clone().pow(4)
                    + Rational::from(2) * table.beta[k].clone() * inv.clone().pow(3)
                    + table.gamma[k].clone() * inv.pow(2);
            }
            acc
        };
        let d2 = |t: &Rational| -> Rational {
            let mut acc = Rational::new();
            for k in 0..table.alpha.len() {
                let inv = Rational::from(1) / (t.clone() + Rational::from(k as u32));
                acc += Rational::from(12) * table.alpha[k].clone() * inv.clone().pow(5)
                    + Rational::from(6) * table.beta[k].clone() * inv.clone().pow(4)
                    + Rational::from(2) * table.gamma[k].clone() * inv.pow(3);
            }
            acc
        };

        for t in [Rational::from(3), Rational::from((7, 2))] {
            // First derivative: central difference of the product form.
            let mut prev: Option<Rational> = None;
            for i in 3..6u32 {
                let h = Rational::from((1, 1i64 << i));
                let fd = (cube(&(t.clone() - &h)) - cube(&(t.clone() + &h)))
                    / (Rational::from(2) * h.clone());
                let err: Rational = (fd - w4(&t)).abs();
                if let Some(p) = prev {
                    // Second-order convergence: error shrinks at least 3x
                    // per halving (the asymptotic factor is 4).
                    if err.clone() * Rational::from(3) > p {
                        return Err(format!(
                            "first-derivative error did not shrink at t = {}: {} -> {}",
                            t,
                            p.to_f64(),
                            err.to_f64()
                        ));
                    }
                }
                prev = Some(err);
            }
            // Second derivative.
            let mut prev: Option<Rational> = None;
            for i in 3..6u32 {
                let h = Rational::from((1, 1i64 << i));
                let fd = (cube(&(t.clone() + &h)) - Rational::from(2) * cube(&t)
                    + cube(&(t.clone() - &h)))
                    / (h.clone() * h.clone());
                let err: Rational = (fd - d2(&t)).abs();
                if let Some(p) = prev {
                    if err.clone() * Rational::from(3) > p {
                        return Err(format!(
                            "second-derivative error did not shrink at t = {}: {} -> {}",
                            t,
                            p.to_f64(),
                            err.to_f64()
                        ));
                    }
                }
                prev = Some(err);
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_08_zeta_forms_at_one() {
    criterion(8, "z = 1 series values equal the zeta linear forms to 2^-100", || {
        let budget = PrecisionBudget::new(104).with_max_terms(50_000_000);
        let z = omega_normalize(&APComplex::from_f64(1.0, 0.0, budget.work_prec() + 64))
            .unwrap();
        let spec = AuxSpec::new(1, 2, z, budget).unwrap();
        let forms = zeta_forms_at_one(1, 2).map_err(|e| e.to_string())?;
        // The weight-1 slots vanish exactly: no zeta(2) in the f4 form and
        // no zeta(3)-from-gamma in the f6 form.
        if forms[1].zeta_coeffs.contains_key(&2) {
            return Err("f4 form carries a zeta(2) term".into());
        }
        if forms[2].zeta_coeffs.contains_key(&2) || forms[2].zeta_coeffs.contains_key(&3) {
            return Err("f6 form carries a low-weight zeta term".into());
        }
        for (f, idx, name) in [
            (f2_star as fn(&AuxSpec, EvalPath) -> _, 0usize, "f2"),
            (f4_star, 1, "f4"),
            (f6_star, 2, "f6"),
        ] {
            let series = f(&spec, EvalPath::Series).map_err(|e| e.to_string())?;
            let closed = forms[idx].eval(&spec.budget).map_err(|e| e.to_string())?;
            let d = (series.re().clone() - &closed).abs();
            if d >= Float::with_val(64, 1) >> 100 {
                return Err(format!(
                    "{}: |series - zeta form| = {:e} exceeds 2^-100",
                    name,
                    d.to_f64()
                ));
            }
            if series.im().clone().abs() >= Float::with_val(64, 1) >> 100 {
                return Err(format!("{}: series at z = 1 is not real", name));
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_09_scan() {
    criterion(9, "quality-measure scan at N = 50 is positive and stable", || {
        let gamma = Float::with_val(128, 43.464412f64);
        let a = scan(50, &gamma, &PrecisionBudget::new(64)).map_err(|e| e.to_string())?;
        if !(a.min_value.is_sign_positive() && !a.min_value.is_zero()) {
            return Err(format!("minimum {} is not positive", a.min_value.to_f64()));
        }
        let b = scan(50, &gamma, &PrecisionBudget::new(128)).map_err(|e| e.to_string())?;
        if a.argmin != b.argmin {
            return Err(format!(
                "argmin changed under precision doubling: {:?} vs {:?}",
                a.argmin, b.argmin
            ));
        }
        // N = 1, gamma = 0: the scan minimum is the four-point minimum of
        // ||phi_1|| + ||phi_2||, computed directly here.
        let budget = PrecisionBudget::new(64);
        let zero_gamma = Float::with_val(128, 0);
        let s = scan(1, &zero_gamma, &budget).map_err(|e| e.to_string())?;
        let mut direct: Option<Float> = None;
        for xy in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
            let v = dist_to_int(&phi(0, xy, &budget).map_err(|e| e.to_string())?)
                + dist_to_int(&phi(1, xy, &budget).map_err(|e| e.to_string())?);
            direct = Some(match direct {
                None => v,
                Some(d) => d.min(&v),
            });
        }
        let direct = direct.unwrap();
        let d = (s.min_value.clone() - &direct).abs();
        if d >= Float::with_val(64, 1) >> 48 {
            return Err(format!(
                "N = 1 scan minimum {} differs from direct minimum {}",
                s.min_value.to_f64(),
                direct.to_f64()
            ));
        }
        Ok(())
    });
}

#[test]
fn acceptance_10_line_vs_loop() {
    criterion(10, "line and right-loop contours agree where both converge", || {
        // m = n = 1, p = 1, q = 2: the arg bound factor is 1/2 > 0 so the
        // A1 condition holds on the positive axis, and p <= q with |z| < 1
        // gives B2 at z = 1/2.
        let params = GParams::new(
            1,
            1,
            vec![Rational::from((1, 2))],
            vec![Rational::new(), Rational::from((1, 3))],
        )
        .map_err(|e| e.to_string())?;
        let budget = PrecisionBudget::new(128);
        let z = omega_normalize(&APComplex::from_rational(
            &Rational::from((1, 2)),
            budget.work_prec() + 64,
        ))
        .unwrap();
        let report = params.classify(&z);
        use meijerforms::meijer::CondLabel;
        if !(report.holds(CondLabel::A1) && report.holds(CondLabel::B2)) {
            return Err(format!("expected A1 and B2 to hold, got {:?}", report.holds));
        }
        let loop_val = eval_g(&params, &z, Contour::L1, &budget).map_err(|e| e.to_string())?;
        let line_val = eval_g(&params, &z, Contour::L0, &budget).map_err(|e| e.to_string())?;
        check_close(&loop_val.value, &line_val.value, 64, "L1 residue sum vs L0 quadrature")
    });
}
