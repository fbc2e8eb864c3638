//! Exact arbitrary-precision rational arithmetic primitives: factorials,
//! binomials, harmonic sums, and the rational function `R0(t; nu)`.
//!
//! Everything here is pure and exact; no floating point enters this module.

use crate::error::{EvalError, Result};
use once_cell::sync::Lazy;
use rug::ops::Pow;
use rug::{Integer, Rational};
use std::sync::Mutex;

static FACTORIALS: Lazy<Mutex<Vec<Integer>>> = Lazy::new(|| Mutex::new(vec![Integer::from(1)]));

/// `n!`, memoized per process up to the largest requested argument.
pub fn factorial(n: u32) -> Integer {
    let mut cache = FACTORIALS.lock().unwrap();
    while cache.len() <= n as usize {
        let next = Integer::from(cache.len()) * cache.last().unwrap();
        cache.push(next);
    }
    cache[n as usize].clone()
}

/// Binomial coefficient `C(n, k)`; zero when `k` lies outside `[0, n]`.
pub fn binomial(n: u32, k: i64) -> Integer {
    if k < 0 || k > n as i64 {
        return Integer::from(0);
    }
    Integer::from(n).binomial(k as u32)
}

/// The finite sum `sum_{kappa = a}^{b} kappa^(-m)`, empty when `a > b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarmonicSpec {
    /// Power of the summand, `m >= 1`.
    pub power: u32,
    /// Lower summation bound, `>= 1`.
    pub lower: i64,
    /// Upper summation bound; the sum is empty when `lower > upper`.
    pub upper: i64,
}

impl HarmonicSpec {
    pub fn new(power: u32, lower: i64, upper: i64) -> Self {
        assert!(power >= 1, "harmonic power must be >= 1");
        assert!(lower >= 1, "harmonic lower bound must be >= 1");
        HarmonicSpec { power, lower, upper }
    }
}

/// Exact value of a harmonic sum; `0` for the empty range.
pub fn harmonic_sum(spec: HarmonicSpec) -> Rational {
    let mut acc = Rational::new();
    for kappa in spec.lower..=spec.upper {
        let denom = Integer::from(kappa).pow(spec.power);
        acc += Rational::from((Integer::from(1), denom));
    }
    acc
}

/// Parameters of the rational function `R(a; b; t)` with `a = nu`,
/// `b = nu * delta`, together with the derived quantities
/// `d_l = delta + (-1)^l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RParams {
    /// Zero-start of the numerator product, `a = nu`.
    pub a: u32,
    /// Top of both products, `b = nu * delta`.
    pub b: u32,
    pub nu: u32,
    pub delta: u32,
}

impl RParams {
    /// Parameters for `R0(t; nu) = R(nu; nu*delta; t)`.
    pub fn new(nu: u32, delta: u32) -> Result<Self> {
        if nu < 1 {
            return Err(EvalError::Domain("nu must be >= 1".into()));
        }
        if delta < 2 {
            return Err(EvalError::Domain("delta must be >= 2".into()));
        }
        Ok(RParams { a: nu, b: nu * delta, nu, delta })
    }

    /// `d1 = delta - 1`, so `nu * d1 = nu*delta - nu`.
    pub fn d1(&self) -> u32 {
        self.delta - 1
    }

    /// `d2 = delta + 1`.
    pub fn d2(&self) -> u32 {
        self.delta + 1
    }

    /// The leading factor `b! / (b - a)! = (nu*delta)! / (nu*d1)!`.
    pub fn leading_factor(&self) -> Integer {
        factorial(self.b) / factorial(self.b - self.a)
    }

    /// True when `t` lies in the pole set `{0, -1, ..., -b}`.
    pub fn is_pole(&self, t: &Rational) -> bool {
        if !t.is_integer() {
            return false;
        }
        let n = t.numer();
        *n <= 0 && *n >= -Integer::from(self.b)
    }
}

/// Exact value of `R0(t; nu)`:
/// `b!/(b-a)! * prod_{kappa=a+1}^{b} (t - kappa) * prod_{kappa=0}^{b} (t + kappa)^(-1)`.
///
/// Vanishes for integer `t` in `a+1 ..= b`; returns `PoleError` for `t` in
/// `{0, -1, ..., -b}`.
pub fn r0_eval(t: &Rational, params: &RParams) -> Result<Rational> {
    if params.is_pole(t) {
        return Err(EvalError::Pole(t.clone()));
    }
    let mut numer = Rational::from(params.leading_factor());
    for kappa in (params.a + 1)..=params.b {
        numer *= t.clone() - Rational::from(kappa);
    }
    let mut denom = Rational::from(1);
    for kappa in 0..=params.b {
        denom *= t.clone() + Rational::from(kappa);
    }
    Ok(numer / denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(2, 1), 2);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(4, 1), 4);
        assert_eq!(binomial(4, -1), 0);
        assert_eq!(binomial(4, 5), 0);
    }

    #[test]
    fn binomial_symmetry() {
        for n in 0..12u32 {
            for k in 0..=n as i64 {
                assert_eq!(binomial(n, k), binomial(n, n as i64 - k));
            }
        }
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic_sum(HarmonicSpec::new(1, 1, 2)), Rational::from((3, 2)));
        assert_eq!(harmonic_sum(HarmonicSpec::new(2, 2, 2)), Rational::from((1, 4)));
        assert_eq!(harmonic_sum(HarmonicSpec::new(1, 3, 2)), Rational::new());
    }

    #[test]
    fn harmonic_additivity() {
        for m in 1..=2 {
            let whole = harmonic_sum(HarmonicSpec::new(m, 1, 9));
            let left = harmonic_sum(HarmonicSpec::new(m, 1, 4));
            let right = harmonic_sum(HarmonicSpec::new(m, 5, 9));
            assert_eq!(left + right, whole);
        }
    }

    #[test]
    fn r0_hand_value() {
        // R0(t; 1) = 2(t-2)/(t(t+1)(t+2)) for delta = 2.
        let p = RParams::new(1, 2).unwrap();
        let v = r0_eval(&Rational::from(1), &p).unwrap();
        assert_eq!(v, Rational::from((-1, 3)));
    }

    #[test]
    fn r0_zeros_in_stated_range() {
        for (nu, delta) in [(1u32, 2u32), (1, 3), (2, 2), (2, 3), (3, 2)] {
            let p = RParams::new(nu, delta).unwrap();
            for t in (nu + 1)..=(nu * delta) {
                assert_eq!(r0_eval(&Rational::from(t), &p).unwrap(), 0);
            }
        }
    }

    #[test]
    fn r0_pole_error() {
        let p = RParams::new(1, 2).unwrap();
        for t in [0i64, -1, -2] {
            assert!(matches!(r0_eval(&Rational::from(t), &p), Err(EvalError::Pole(_))));
        }
        // Just outside the pole set.
        assert!(r0_eval(&Rational::from(-3), &p).is_ok());
    }

    #[test]
    fn rparams_validation() {
        assert!(RParams::new(0, 2).is_err());
        assert!(RParams::new(1, 1).is_err());
        let p = RParams::new(2, 3).unwrap();
        assert_eq!(p.d1(), 2);
        assert_eq!(p.d2(), 4);
        assert_eq!(p.b - p.a, p.nu * p.d1());
    }
}
