//! Complex Gamma function at arbitrary precision.
//!
//! Strategy: reflection for `Re w < 1/2`, argument lifting up to a
//! precision-dependent threshold, then the Stirling asymptotic series with
//! exact Bernoulli coefficients. The series is truncated when a term drops
//! below the working epsilon; the threshold is chosen so the smallest term
//! is already below it.

use crate::complex::APComplex;
use crate::numerics::bernoulli;
use once_cell::sync::Lazy;
use rug::float::Constant;
use rug::{Float, Rational};
use std::sync::Mutex;

static STIRLING_COEFFS: Lazy<Mutex<Vec<Rational>>> = Lazy::new(|| Mutex::new(Vec::new()));

/// `B_{2j} / (2j (2j-1))` for `j >= 1`, cached.
fn stirling_coeff(j: u32) -> Rational {
    let mut cache = STIRLING_COEFFS.lock().unwrap();
    while cache.len() < j as usize {
        let jj = cache.len() as u32 + 1;
        let c = bernoulli(2 * jj) / Rational::from(2 * jj * (2 * jj - 1));
        cache.push(c);
    }
    cache[j as usize - 1].clone()
}

/// Smallest real part at which the Stirling tail already undershoots
/// `2^(-wp)`: the minimal term is about `exp(-2 pi Re w)`.
fn stirling_threshold(wp: u32) -> f64 {
    (wp as f64 * 0.13).max(12.0)
}

/// `Gamma(w)` to roughly `prec` significant bits.
///
/// Arguments at or extremely near the poles `0, -1, -2, ...` produce
/// non-finite parts; callers keep their evaluation points away from poles.
pub fn gamma(w: &APComplex, prec: u32) -> APComplex {
    // Guard for the exp of a large log-gamma: |ln Gamma| ~ |w| ln |w|.
    let aw = w.abs().to_f64().abs().max(1.0);
    let scale_bits = (aw * aw.ln().max(1.0)).log2().max(0.0).ceil() as u32;
    let wp = prec + 32 + scale_bits;
    gamma_wp(&w.with_prec(wp), wp)
}

fn gamma_wp(w: &APComplex, wp: u32) -> APComplex {
    let half = Float::with_val(wp, 0.5);
    if *w.re() < half {
        // Gamma(w) = pi / (sin(pi w) Gamma(1 - w))
        let pi = Float::with_val(wp, Constant::Pi);
        let piw = w.scale(&pi);
        let sin_piw = piw.sin();
        let one_minus = &APComplex::one(wp) - w;
        let denom = &sin_piw * &gamma_wp(&one_minus, wp);
        return &APComplex::from_float(pi) / &denom;
    }
    let threshold = stirling_threshold(wp);
    let re = w.re().to_f64();
    if re < threshold {
        // Lift: Gamma(w) = Gamma(w + m) / prod_{i=0}^{m-1} (w + i)
        let m = (threshold - re).ceil() as u32;
        let mut shifted = w.clone();
        let mut prod = APComplex::one(wp);
        for _ in 0..m {
            prod = &prod * &shifted;
            shifted = &shifted + &APComplex::one(wp);
        }
        return &gamma_wp(&shifted, wp) / &prod;
    }
    ln_gamma_stirling(w, wp).exp()
}

/// Stirling series for `ln Gamma(w)`, valid for `Re w` above the threshold.
fn ln_gamma_stirling(w: &APComplex, wp: u32) -> APComplex {
    let ln_w = w.ln();
    let half = APComplex::from_float(Float::with_val(wp, 0.5));
    let mut acc = &(&(w - &half) * &ln_w) - w;
    let two_pi = Float::with_val(wp, Constant::Pi) * 2u32;
    acc = &acc + &APComplex::from_float(two_pi.ln() / 2u32);

    let tol = Float::with_val(wp, 1) >> (wp + 2);
    let w_inv_sq = w.powi(-2);
    let mut wpow = w.powi(-1);
    for j in 1..100_000u32 {
        let c = stirling_coeff(j);
        let term = wpow.scale(&Float::with_val(wp, &c));
        acc = &acc + &term;
        if term.abs() < tol {
            break;
        }
        wpow = &wpow * &w_inv_sq;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(prec: u32, bits: u32) -> Float {
        Float::with_val(prec, 1) >> bits
    }

    fn close(a: &Float, b: &Float, bits: u32) -> bool {
        let prec = a.prec().max(b.prec());
        let scale = Float::with_val(prec, b.clone().abs()).max(&Float::with_val(prec, 1));
        ((a.clone() - b.clone()).abs() / scale) < eps(prec, bits)
    }

    #[test]
    fn integer_and_half_integer_values() {
        let g5 = gamma(&APComplex::from_f64(5.0, 0.0, 256), 256);
        assert!(close(g5.re(), &Float::with_val(256, 24), 250));
        let gh = gamma(&APComplex::from_f64(0.5, 0.0, 256), 256);
        let sqrt_pi = Float::with_val(300, rug::float::Constant::Pi).sqrt();
        assert!(close(gh.re(), &sqrt_pi, 250));
    }

    #[test]
    fn matches_mpfr_on_the_real_line() {
        for x in [3.7f64, 1.1, 17.25, -2.3, -25.75] {
            let ours = gamma(&APComplex::from_f64(x, 0.0, 256), 256);
            let mpfr = Float::with_val(300, x).gamma();
            assert!(close(ours.re(), &mpfr, 245), "x = {}", x);
            assert!(ours.im().clone().abs() < 1e-60);
        }
    }

    #[test]
    fn recurrence_at_complex_argument() {
        // Gamma(w + 1) = w Gamma(w)
        let w = APComplex::from_f64(-7.3, 2.6, 256);
        let gw = gamma(&w, 256);
        let gw1 = gamma(&(&w + &APComplex::one(256)), 256);
        let rhs = &w * &gw;
        assert!((&gw1 - &rhs).abs() < gw1.abs() * eps(256, 240));
    }

    #[test]
    fn conjugate_symmetry() {
        let w = APComplex::from_f64(4.25, -3.5, 192);
        let g = gamma(&w, 192);
        let gc = gamma(&w.conj(), 192);
        assert!((&g.conj() - &gc).abs() < g.abs() * eps(192, 180));
    }

    #[test]
    fn reflection_consistency_far_left() {
        // Gamma(w) Gamma(1 - w) = pi / sin(pi w), checked at a far-left point.
        let w = APComplex::from_f64(-40.4, 0.2, 192);
        let lhs = &gamma(&w, 192) * &gamma(&(&APComplex::one(192) - &w), 192);
        let pi = Float::with_val(192, rug::float::Constant::Pi);
        let rhs = &APComplex::from_float(pi.clone()) / &w.scale(&pi).sin();
        assert!((&lhs - &rhs).abs() < lhs.abs() * eps(192, 175));
    }
}
