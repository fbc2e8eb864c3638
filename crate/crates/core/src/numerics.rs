//! Branch convention on the cut domain `Omega*`, integer zeta values via
//! Euler-Maclaurin summation with a rigorous remainder bound, and
//! polylogarithms by direct summation with a geometric tail bound.
//!
//! `Omega*` is the set `|z| >= 1` with `arg z` in `(-3pi/2, pi/2]`; on it the
//! logarithm satisfies `log(-z) = log z - i pi` for `Re z > 0`.

use crate::complex::APComplex;
use crate::error::{EvalError, Result};
use once_cell::sync::Lazy;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::sync::Mutex;

/// Truncation policy: absolute target, guard bits, and a hard term cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionBudget {
    /// Requested absolute error: results are within `2^(-target_bits)`.
    pub target_bits: u32,
    /// Extra working bits above the target.
    pub guard_bits: u32,
    /// Hard cap on series terms before giving up.
    pub max_terms: u64,
}

impl PrecisionBudget {
    pub fn new(target_bits: u32) -> Self {
        assert!(target_bits >= 32, "target_bits must be >= 32");
        PrecisionBudget { target_bits, guard_bits: 32, max_terms: 10_000_000 }
    }

    pub fn with_guard(mut self, guard_bits: u32) -> Self {
        assert!(guard_bits >= 16, "guard_bits must be >= 16");
        self.guard_bits = guard_bits;
        self
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Self {
        self.max_terms = max_terms;
        self
    }

    /// Working precision in bits.
    pub fn work_prec(&self) -> u32 {
        self.target_bits + self.guard_bits
    }

    /// `2^(-target_bits + shift)` at working precision.
    pub fn eps(&self, shift: i64) -> Float {
        Float::with_val(self.work_prec(), 2)
            .pow(Float::with_val(32, shift - self.target_bits as i64))
    }
}

impl Default for PrecisionBudget {
    fn default() -> Self {
        PrecisionBudget::new(256)
    }
}

/// A point of the cut plane with its argument reduced into `(-3pi/2, pi/2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaPoint {
    value: APComplex,
    arg: Float,
}

impl OmegaPoint {
    pub fn value(&self) -> &APComplex {
        &self.value
    }

    pub fn arg(&self) -> &Float {
        &self.arg
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    /// `arg / pi` as an exact rational when the point lies on an axis.
    ///
    /// Used by the convergence classifier to decide boundary cases exactly.
    pub fn arg_over_pi_exact(&self) -> Option<Rational> {
        let (re, im) = (self.value.re(), self.value.im());
        if im.is_zero() {
            if re.is_sign_positive() {
                Some(Rational::new())
            } else {
                Some(Rational::from(-1))
            }
        } else if re.is_zero() {
            if im.is_sign_positive() {
                Some(Rational::from((1, 2)))
            } else {
                Some(Rational::from((-1, 2)))
            }
        } else {
            None
        }
    }

    /// True when the point belongs to `Omega*` (`|z| >= 1`).
    pub fn in_omega_star(&self) -> bool {
        self.value.norm_sqr() >= 1
    }

    /// True when the point belongs to `Omega*_0` (`|z| >= 1`, `Re z > 0`).
    pub fn in_omega_star_zero(&self) -> bool {
        self.in_omega_star() && self.value.re().is_sign_positive() && !self.value.re().is_zero()
    }

    /// The point `-z`, normalized. For `Re z > 0` this realizes
    /// `arg(-z) = arg(z) - pi`.
    pub fn negated(&self) -> OmegaPoint {
        omega_normalize(&-&self.value).expect("negation of a nonzero point")
    }
}

/// Reduce the argument of a nonzero point into `(-3pi/2, pi/2]`.
///
/// Idempotent; the principal argument is shifted down by `2pi` whenever it
/// exceeds `pi/2`, so the negative real axis carries `arg = -pi`.
pub fn omega_normalize(z: &APComplex) -> Result<OmegaPoint> {
    if z.is_zero() {
        return Err(EvalError::Domain("omega_normalize: z = 0".into()));
    }
    let prec = z.prec();
    let mut arg = z.arg();
    let half_pi = APComplex::pi(prec) / 2u32;
    if arg > half_pi {
        arg -= Float::with_val(prec, 4) * half_pi;
    }
    Ok(OmegaPoint { value: z.clone(), arg })
}

/// `log z` under the `Omega*` branch: `log|z| + i * arg` with the reduced
/// argument, so `log(-z) = log z - i pi` whenever `Re z > 0`.
pub fn log_omega(p: &OmegaPoint) -> APComplex {
    let prec = p.prec();
    let ln_abs = Float::with_val(prec, p.value.abs().ln_ref());
    APComplex::new(ln_abs, p.arg.clone())
}

static BERNOULLI: Lazy<Mutex<Vec<Rational>>> = Lazy::new(|| Mutex::new(vec![Rational::from(1)]));

/// Exact Bernoulli number `B_n` (with `B_1 = -1/2`), cached per process.
pub fn bernoulli(n: u32) -> Rational {
    let mut cache = BERNOULLI.lock().unwrap();
    while cache.len() <= n as usize {
        let m = cache.len() as u32;
        // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
        let mut acc = Rational::new();
        for k in 0..m {
            acc += Rational::from(Integer::from(m + 1).binomial(k)) * cache[k as usize].clone();
        }
        let b = -acc / Rational::from(m + 1);
        cache.push(b);
    }
    cache[n as usize].clone()
}

/// `zeta(n)` for integer `n >= 2`, by direct summation to a cutoff plus the
/// Euler-Maclaurin correction, with the remainder bounded by twice the first
/// omitted correction term.
///
/// Absolute error is at most `2^(-target_bits)`.
pub fn zeta_int(n: u32, budget: &PrecisionBudget) -> Result<Float> {
    if n < 2 {
        return Err(EvalError::Domain("zeta_int requires n >= 2".into()));
    }
    let wp = budget.work_prec() + 16;
    let goal = budget.eps(-2);
    let mut cutoff: u64 = (wp as u64 / 8 + 4).max(16);
    loop {
        if cutoff > budget.max_terms {
            return Err(EvalError::BudgetExceeded(format!(
                "zeta_int: cutoff {} exceeds max_terms {}",
                cutoff, budget.max_terms
            )));
        }
        if let Some(v) = zeta_euler_maclaurin(n, cutoff, wp, &goal) {
            return Ok(v);
        }
        cutoff *= 2;
    }
}

/// One Euler-Maclaurin attempt with summation cutoff `big_n`. Returns `None`
/// when the correction terms stop decreasing before the remainder bound is
/// met (cutoff too small for the requested precision).
fn zeta_euler_maclaurin(n: u32, big_n: u64, wp: u32, goal: &Float) -> Option<Float> {
    let mut acc = Float::new(wp);
    for k in 1..=big_n {
        acc += Float::with_val(wp, k).pow(-(n as i64));
    }
    let nf = Float::with_val(wp, big_n);
    // integral term N^(1-n)/(n-1) and the -f(N)/2 correction
    acc += nf.clone().pow(1 - n as i64) / Float::with_val(wp, n - 1);
    acc -= nf.clone().pow(-(n as i64)) / 2u32;

    // sum_j B_2j/(2j)! (n)_{2j-1} N^(-n-2j+1); remainder bounded by the
    // first omitted term because the derivatives of x^-n alternate with
    // constant sign on [N, inf).
    let mut poch = Integer::from(n); // (n)_{1}
    let mut fact = Integer::from(2); // (2j)!
    let mut prev_mag: Option<Float> = None;
    for j in 1..10_000u32 {
        let b2j = bernoulli(2 * j);
        let coeff = Rational::from((b2j.numer().clone(), b2j.denom().clone() * fact.clone()));
        let term = Float::with_val(wp, &coeff)
            * Float::with_val(wp, &poch)
            * nf.clone().pow(-(n as i64) - 2 * j as i64 + 1);
        let mag = term.clone().abs();
        if let Some(prev) = &prev_mag {
            if mag > *prev {
                return None; // divergent regime; enlarge the cutoff
            }
        }
        acc += &term;
        // bound for the next (omitted) term, with a factor-2 safety margin
        let next_poch = poch.clone()
            * Integer::from(n + 2 * j - 1)
            * Integer::from(n + 2 * j);
        let next_fact = fact.clone() * Integer::from(2 * j + 1) * Integer::from(2 * j + 2);
        let nb = bernoulli(2 * j + 2);
        let next_mag = Float::with_val(wp, &Rational::from((nb.numer().clone().abs(), nb.denom().clone() * next_fact.clone())))
            * Float::with_val(wp, &next_poch)
            * nf.clone().pow(-(n as i64) - 2 * j as i64 - 1);
        if Float::with_val(wp, 2) * next_mag.clone() < *goal {
            return Some(acc);
        }
        prev_mag = Some(mag);
        poch = next_poch;
        fact = next_fact;
    }
    None
}

/// Polylogarithm `L_n(w) = sum_{t>=1} w^t t^(-n)` for `|w| < 1` by direct
/// summation; the tail after `T` terms is bounded by `|w|^(T+1) / (1 - |w|)`.
///
/// `w = 1` with `n >= 2` delegates to [`zeta_int`]; other points of the unit
/// circle are rejected with `BudgetExceeded`, points outside with a domain
/// error.
pub fn polylog(n: u32, w: &APComplex, budget: &PrecisionBudget) -> Result<APComplex> {
    if n < 1 {
        return Err(EvalError::Domain("polylog requires n >= 1".into()));
    }
    let wp = budget.work_prec();
    let w = w.with_prec(wp.max(w.prec()));
    let aw = w.abs();
    if aw > 1 {
        return Err(EvalError::Domain(format!("polylog: |w| = {} > 1", aw.to_f64())));
    }
    if aw == 1 {
        if w.im().is_zero() && *w.re() == 1 {
            if n >= 2 {
                return Ok(APComplex::from_float(zeta_int(n, budget)?));
            }
            return Err(EvalError::Domain("polylog: L_1(1) diverges".into()));
        }
        return Err(EvalError::BudgetExceeded(
            "polylog on the unit circle away from w = 1 is not supported".into(),
        ));
    }
    let goal = budget.eps(-1);
    let one_minus = Float::with_val(wp, 1) - &aw;
    let mut acc = APComplex::zero(wp);
    let mut wpow = APComplex::one(wp);
    for t in 1..=budget.max_terms {
        wpow = &wpow * &w;
        let term = wpow.scale(&Float::with_val(wp, t).pow(-(n as i64)));
        acc = &acc + &term;
        // geometric tail bound
        let bound = wpow.abs() * aw.clone() / one_minus.clone();
        if bound < goal {
            return Ok(acc);
        }
    }
    Err(EvalError::BudgetExceeded("polylog: max_terms reached".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn pt(re: f64, im: f64) -> OmegaPoint {
        omega_normalize(&APComplex::from_f64(re, im, 192)).unwrap()
    }

    #[test]
    fn omega_arguments() {
        assert!(pt(1.0, 0.0).arg().is_zero());
        let quarter = Float::with_val(192, Constant::Pi) / 2u32;
        assert!((pt(0.0, 1.0).arg().clone() - &quarter).abs() < 1e-50);
        let minus_pi = -Float::with_val(192, Constant::Pi);
        assert!((pt(-1.0, 0.0).arg().clone() - &minus_pi).abs() < 1e-50);
    }

    #[test]
    fn omega_rejects_zero() {
        assert!(omega_normalize(&APComplex::zero(64)).is_err());
    }

    #[test]
    fn omega_idempotent_and_branch_rule() {
        // arg(-z) = arg(z) - pi for Re z > 0
        let z = pt(2.0, 0.5);
        let neg = z.negated();
        let pi = Float::with_val(192, Constant::Pi);
        let diff = (neg.arg().clone() - z.arg().clone() + pi).abs();
        assert!(diff < 1e-50);
        // idempotence
        let renorm = omega_normalize(z.value()).unwrap();
        assert_eq!(renorm.arg(), z.arg());
    }

    #[test]
    fn log_omega_examples() {
        assert!(log_omega(&pt(1.0, 0.0)).abs() < 1e-50);
        let v = log_omega(&pt(-1.0, 0.0));
        assert!(v.re().clone().abs() < 1e-50);
        let pi = Float::with_val(192, Constant::Pi);
        assert!((v.im().clone() + &pi).abs() < 1e-50);
        let e = Float::with_val(192, 1).exp();
        let v = log_omega(&omega_normalize(&APComplex::from_float(e)).unwrap());
        assert!((v.re().clone() - 1u32).abs() < 1e-50);
    }

    #[test]
    fn exp_log_round_trip() {
        for (re, im) in [(2.0, 0.0), (1.5, 2.0), (-3.0, 0.25), (0.5, -4.0)] {
            let p = pt(re, im);
            let back = log_omega(&p).exp();
            assert!(back.approx_eq(p.value(), 180));
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), 1);
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(3), 0);
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
    }

    #[test]
    fn zeta_two_matches_pi_squared_over_six() {
        let budget = PrecisionBudget::new(256);
        let z2 = zeta_int(2, &budget).unwrap();
        let wp = 320;
        let oracle = Float::with_val(wp, Constant::Pi).square() / 6u32;
        assert!((z2 - oracle).abs() < Float::with_val(wp, 2).pow(-256));
    }

    #[test]
    fn zeta_three_digits() {
        let z3 = zeta_int(3, &PrecisionBudget::new(128)).unwrap();
        assert!((z3 - Float::parse("1.2020569031595942853997381615114")
            .map(|p| Float::with_val(160, p))
            .unwrap())
        .abs()
            < 1e-30);
    }

    #[test]
    fn zeta_decreases_to_one() {
        let budget = PrecisionBudget::new(64);
        let mut prev = zeta_int(2, &budget).unwrap();
        for n in 3..20 {
            let cur = zeta_int(n, &budget).unwrap();
            assert!(cur < prev);
            assert!(cur > 1);
            prev = cur;
        }
    }

    #[test]
    fn zeta_self_consistency_under_extra_precision() {
        let a = zeta_int(5, &PrecisionBudget::new(128)).unwrap();
        let b = zeta_int(5, &PrecisionBudget::new(192)).unwrap();
        assert!((a - b).abs() < Float::with_val(224, 2).pow(-128));
    }

    #[test]
    fn polylog_log_identity() {
        // L_1(w) = -log(1 - w) at w = 1/2
        let budget = PrecisionBudget::new(192);
        let w = APComplex::from_f64(0.5, 0.0, budget.work_prec());
        let v = polylog(1, &w, &budget).unwrap();
        let log2 = Float::with_val(224, 2).ln();
        assert!((v.re().clone() - &log2).abs() < Float::with_val(224, 2).pow(-190));
        assert!(v.im().is_zero() || v.im().clone().abs() < Float::with_val(224, 2).pow(-190));
    }

    #[test]
    fn polylog_zero_and_positivity() {
        let budget = PrecisionBudget::new(96);
        let v = polylog(4, &APComplex::zero(128), &budget).unwrap();
        assert!(v.is_zero());
        for w in [0.1, 0.35, 0.8] {
            let v = polylog(3, &APComplex::from_f64(w, 0.0, 128), &budget).unwrap();
            assert!(v.re().is_sign_positive());
        }
    }

    #[test]
    fn polylog_brute_force_check() {
        // L_3(1/2) against a long partial sum at higher precision.
        let budget = PrecisionBudget::new(128);
        let v = polylog(3, &APComplex::from_f64(0.5, 0.0, 160), &budget).unwrap();
        let wp = 256;
        let mut brute = Float::new(wp);
        for t in 1..400u32 {
            brute += Float::with_val(wp, 0.5).pow(t) * Float::with_val(wp, t).pow(-3);
        }
        assert!((v.re().clone() - brute).abs() < Float::with_val(wp, 2).pow(-120));
    }

    #[test]
    fn polylog_domain_errors() {
        let budget = PrecisionBudget::new(64);
        let outside = APComplex::from_f64(1.5, 0.0, 96);
        assert!(matches!(polylog(2, &outside, &budget), Err(EvalError::Domain(_))));
        let circle = APComplex::from_f64(0.0, 1.0, 96);
        assert!(matches!(polylog(2, &circle, &budget), Err(EvalError::BudgetExceeded(_))));
        let one = APComplex::one(96);
        assert!(polylog(2, &one, &budget).is_ok());
    }
}
