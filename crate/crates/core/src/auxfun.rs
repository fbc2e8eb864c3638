//! The auxiliary functions `f1* .. f6*` built from the cube of `R0(t; nu)`,
//! each computable along independent routes:
//!
//! - **series**: `f* = (-z)^nu sum_{t > nu} z^(-t) W(t)` with `W` one of the
//!   partial-fraction weights of `R0^3` and its first two derivatives;
//! - **closed**: polylogarithms at `1/z` against the coefficient polynomials
//!   `alpha*, beta*, gamma*` minus the finite tail polynomial;
//! - **meijer**: a single Meijer G-function (for `f1, f2, f3, f5^v`), scaled
//!   by `((nu Delta)! / (nu d1)!)^3` and a sign.
//!
//! The combinations `f3* = f2* log z + f4*` and
//! `f5^v* = f2* ((log(-z))^2 + pi^2)/2 + f4* log(-z) + f6*` tie the routes
//! together; at `z = 1` the values collapse to linear forms in zeta values
//! with the exact coefficients `alpha*(1), beta*(1)` (and `gamma*(1) = 0`).

use crate::coeffs::{coeff_polys, coeff_table, f1_star_poly, tail_polys, CoeffTable};
use crate::complex::APComplex;
use crate::error::{EvalError, Result};
use crate::exact::RParams;
use crate::meijer::{eval_g, Contour, GParams, GValue};
use crate::numerics::{log_omega, polylog, zeta_int, OmegaPoint, PrecisionBudget};
use rug::ops::Pow;
use rug::{Float, Rational};
use std::collections::BTreeMap;

/// Evaluation route selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalPath {
    /// Residue series in powers of `1/z`.
    Series,
    /// Polylogarithm closed form.
    Closed,
    /// Meijer G contour evaluation.
    Meijer,
}

/// One evaluation request: the `(nu, delta)` pair, the point, and the
/// precision budget.
#[derive(Debug, Clone)]
pub struct AuxSpec {
    pub nu: u32,
    pub delta: u32,
    pub z: OmegaPoint,
    pub budget: PrecisionBudget,
}

impl AuxSpec {
    pub fn new(nu: u32, delta: u32, z: OmegaPoint, budget: PrecisionBudget) -> Result<Self> {
        RParams::new(nu, delta)?;
        Ok(AuxSpec { nu, delta, z, budget })
    }

    fn require_domain(&self) -> Result<()> {
        if !self.z.in_omega_star_zero() {
            return Err(EvalError::Domain(format!(
                "z = {} lies outside the domain |z| >= 1, Re z > 0",
                self.z.value()
            )));
        }
        Ok(())
    }

    fn wp(&self) -> u32 {
        self.budget.work_prec() + 64
    }

    /// `(-z)^nu = (-1)^nu z^nu` at working precision.
    fn prefactor(&self) -> APComplex {
        let v = self.z.value().with_prec(self.wp()).powi(self.nu as i64);
        if self.nu % 2 == 1 {
            -&v
        } else {
            v
        }
    }
}

/// `((nu delta)! / (nu d1)!)^3`, the factor between `f_j` and `f_j*`.
pub fn scale_factor(nu: u32, delta: u32) -> Result<Rational> {
    let p = RParams::new(nu, delta)?;
    Ok(Rational::from(p.leading_factor().pow(3)))
}

/// The shared `(6, 6)` Meijer parameter block: `a` is three copies of
/// `-nu d1` and three of `1 + nu d2`, `b` three zeros and three copies of
/// `nu`; `n = 3` and `m` selects the integrand.
pub fn g_params(nu: u32, delta: u32, m: u32) -> Result<GParams> {
    let p = RParams::new(nu, delta)?;
    let a_lo = -Rational::from(nu * p.d1());
    let a_hi = Rational::from(1 + nu * p.d2());
    let a = vec![a_lo.clone(), a_lo.clone(), a_lo, a_hi.clone(), a_hi.clone(), a_hi];
    let b = vec![
        Rational::new(),
        Rational::new(),
        Rational::new(),
        Rational::from(nu),
        Rational::from(nu),
        Rational::from(nu),
    ];
    GParams::new(m, 3, a, b)
}

/// `(-1)^(nu (delta + 1))`, the sign in front of the G-representations of
/// `f1*` and `f3*`.
fn sign_right(nu: u32, delta: u32) -> i32 {
    if (nu * (delta + 1)) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `-(-1)^(nu delta)`, the sign in front of the G-representations of `f2*`
/// and `f5^v*` (evaluated at `-z`).
fn sign_left(nu: u32, delta: u32) -> i32 {
    if (nu * delta) % 2 == 0 {
        -1
    } else {
        1
    }
}

fn scaled_g(
    spec: &AuxSpec,
    m: u32,
    at: &OmegaPoint,
    sign: i32,
    contour: Contour,
) -> Result<APComplex> {
    let params = g_params(spec.nu, spec.delta, m)?;
    let gv: GValue = eval_g(&params, at, contour, &spec.budget)?;
    let scale = scale_factor(spec.nu, spec.delta)? * Rational::from(sign);
    Ok(gv.value.scale_rational(&scale))
}

// --- series route ------------------------------------------------------------

/// Float images of the partial-fraction tables at working precision.
struct WeightTables {
    alpha: Vec<Float>,
    beta: Vec<Float>,
    gamma: Vec<Float>,
}

impl WeightTables {
    fn new(table: &CoeffTable, wp: u32) -> Self {
        let conv = |v: &[Rational]| v.iter().map(|c| Float::with_val(wp, c)).collect();
        WeightTables {
            alpha: conv(&table.alpha),
            beta: conv(&table.beta),
            gamma: conv(&table.gamma),
        }
    }

    /// `W(t) = sum_k sum_i mult_i c_i[k] (t + k)^(-weight_i)` with
    /// `c = (alpha, beta, gamma)`.
    fn eval(&self, t: u64, mult: [u32; 3], weight: [u32; 3], wp: u32) -> Float {
        let mut acc = Float::new(wp);
        for k in 0..self.alpha.len() {
            let inv = Float::with_val(wp, 1) / Float::with_val(wp, t + k as u64);
            let rows = [&self.alpha[k], &self.beta[k], &self.gamma[k]];
            for i in 0..3 {
                let mut term = Float::with_val(wp, mult[i]) * rows[i];
                for _ in 0..weight[i] {
                    term *= &inv;
                }
                acc += term;
            }
        }
        acc
    }
}

/// The weight triple of one series: multipliers and inverse powers applied
/// to `(alpha, beta, gamma)`, plus the eventual decay exponent of `W`.
#[derive(Clone, Copy)]
struct SeriesKind {
    mult: [u32; 3],
    weight: [u32; 3],
    /// `|W(t)| ~ t^(-decay_offset - 3 nu)` for large `t`.
    decay_offset: u32,
}

const SERIES_F2: SeriesKind = SeriesKind { mult: [1, 1, 1], weight: [3, 2, 1], decay_offset: 3 };
const SERIES_F4: SeriesKind = SeriesKind { mult: [3, 2, 1], weight: [4, 3, 2], decay_offset: 4 };
const SERIES_F6: SeriesKind = SeriesKind { mult: [6, 3, 1], weight: [5, 4, 3], decay_offset: 5 };

fn series_value(spec: &AuxSpec, kind: SeriesKind) -> Result<APComplex> {
    let wp = spec.wp();
    let table = coeff_table(spec.nu, spec.delta)?;
    let weights = WeightTables::new(&table, wp);
    let nd = (spec.nu * spec.delta) as u64;
    let decay = kind.decay_offset + 3 * spec.nu;

    let z = spec.z.value().with_prec(wp);
    let az = z.abs();
    let at_one = spec.z.value().im().is_zero() && *spec.z.value().re() == 1;
    if !at_one && az <= 1 {
        return Err(EvalError::Domain(
            "the residue series needs |z| > 1 or exactly z = 1".into(),
        ));
    }
    let zinv = z.recip();
    let ratio = zinv.abs();
    // Absolute goal for the inner sum, deflated by the |z|^nu prefactor that
    // multiplies the sum (and its error) at the end.
    let goal = spec.budget.eps(-2) / spec.prefactor().abs();

    let mut acc = APComplex::zero(wp);
    let mut zpow = zinv.powi(spec.nu as i64 + 1); // z^(-t) at t = nu + 1
    let mut t = spec.nu as u64 + 1;
    loop {
        let w = weights.eval(t, kind.mult, kind.weight, wp);
        let term = zpow.scale(&w);
        acc = &acc + &term;
        // Tail bounds: geometric in 1/|z| away from the circle, integral
        // comparison at z = 1; both need t past the zero/pole region so that
        // |W| is decreasing.
        if at_one {
            if t > 4 * nd + 8 {
                let bound = w.clone().abs() * Float::with_val(wp, t) * 4u32
                    / Float::with_val(wp, decay - 1);
                if bound < goal {
                    break;
                }
            }
        } else if t > 2 * nd + 4 {
            let one_minus = Float::with_val(wp, 1) - &ratio;
            let bound = term.abs() * ratio.clone() * 2u32 / one_minus;
            if bound < goal {
                break;
            }
        }
        if t - spec.nu as u64 > spec.budget.max_terms {
            return Err(EvalError::BudgetExceeded(format!(
                "residue series: {} terms without reaching the target",
                t
            )));
        }
        zpow = &zpow * &zinv;
        t += 1;
    }
    Ok(&spec.prefactor() * &acc)
}

// --- closed route ------------------------------------------------------------

struct ClosedPieces {
    alpha_poly: crate::coeffs::RatPoly,
    beta_poly: crate::coeffs::RatPoly,
    gamma_poly: crate::coeffs::RatPoly,
    phi: crate::coeffs::RatPoly,
    psi: crate::coeffs::RatPoly,
    xi: crate::coeffs::RatPoly,
}

fn closed_pieces(nu: u32, delta: u32) -> Result<ClosedPieces> {
    let table = coeff_table(nu, delta)?;
    let (alpha_poly, beta_poly, gamma_poly) = coeff_polys(&table);
    let (phi, psi, xi) = tail_polys(&table);
    Ok(ClosedPieces { alpha_poly, beta_poly, gamma_poly, phi, psi, xi })
}

/// Which of the three polylog-closed forms to assemble.
#[derive(Clone, Copy)]
enum ClosedKind {
    F2,
    F4,
    F6,
}

fn closed_value(spec: &AuxSpec, kind: ClosedKind) -> Result<APComplex> {
    let wp = spec.wp();
    let z = spec.z.value().with_prec(wp);
    if spec.z.value().im().is_zero() && *spec.z.value().re() == 1 {
        // At z = 1 the closed form degenerates to the zeta linear form.
        let forms = zeta_forms_at_one(spec.nu, spec.delta)?;
        let idx = match kind {
            ClosedKind::F2 => 0,
            ClosedKind::F4 => 1,
            ClosedKind::F6 => 2,
        };
        return Ok(APComplex::from_float(forms[idx].eval(&spec.budget)?));
    }
    let pieces = closed_pieces(spec.nu, spec.delta)?;
    let w = z.recip();
    // The polylog errors are amplified by the coefficient polynomial values,
    // which grow like |z|^(nu + nu delta) with large integer coefficients;
    // boost the polylog target accordingly.
    let amp = [&pieces.alpha_poly, &pieces.beta_poly, &pieces.gamma_poly]
        .iter()
        .map(|p| p.eval_complex(&z).abs().to_f64().abs())
        .fold(1.0f64, f64::max);
    let extra = amp.log2().max(0.0).ceil() as u32 + 8;
    let inner = PrecisionBudget::new(spec.budget.target_bits + extra)
        .with_max_terms(spec.budget.max_terms);
    let (la, lb, lc) = match kind {
        ClosedKind::F2 => (
            polylog(3, &w, &inner)?,
            polylog(2, &w, &inner)?,
            polylog(1, &w, &inner)?,
        ),
        ClosedKind::F4 => (
            polylog(4, &w, &inner)?,
            polylog(3, &w, &inner)?,
            polylog(2, &w, &inner)?,
        ),
        ClosedKind::F6 => (
            polylog(5, &w, &inner)?,
            polylog(4, &w, &inner)?,
            polylog(3, &w, &inner)?,
        ),
    };
    let (ma, mb, tail) = match kind {
        ClosedKind::F2 => (1u32, 1u32, &pieces.phi),
        ClosedKind::F4 => (3, 2, &pieces.psi),
        ClosedKind::F6 => (6, 3, &pieces.xi),
    };
    let a = pieces.alpha_poly.eval_complex(&z).scale(&Float::with_val(wp, ma));
    let b = pieces.beta_poly.eval_complex(&z).scale(&Float::with_val(wp, mb));
    let c = pieces.gamma_poly.eval_complex(&z);
    let t = tail.eval_complex(&z);
    let mut acc = &(&a * &la) + &(&b * &lb);
    acc = &acc + &(&c * &lc);
    Ok(&acc - &t)
}

// --- the public functions ----------------------------------------------------

/// `f1*(z)`: an exact polynomial, evaluated at the point's precision.
pub fn f1_star(spec: &AuxSpec) -> Result<APComplex> {
    let poly = f1_star_poly(spec.nu, spec.delta)?;
    Ok(poly.eval_complex(&spec.z.value().with_prec(spec.wp())))
}

/// `f1*` through its Meijer G representation (a finite residue sum).
pub fn f1_star_meijer(spec: &AuxSpec) -> Result<APComplex> {
    spec.require_domain()?;
    // The m = 1 integrand has finitely many right poles, so the right loop
    // is valid for every z; request it explicitly.
    scaled_g(spec, 1, &spec.z, sign_right(spec.nu, spec.delta), Contour::L1)
}

pub fn f2_star(spec: &AuxSpec, path: EvalPath) -> Result<APComplex> {
    spec.require_domain()?;
    match path {
        EvalPath::Series => series_value(spec, SERIES_F2),
        EvalPath::Closed => closed_value(spec, ClosedKind::F2),
        EvalPath::Meijer => scaled_g(
            spec,
            4,
            &spec.z.negated(),
            sign_left(spec.nu, spec.delta),
            Contour::Auto,
        ),
    }
}

pub fn f4_star(spec: &AuxSpec, path: EvalPath) -> Result<APComplex> {
    spec.require_domain()?;
    match path {
        EvalPath::Series => series_value(spec, SERIES_F4),
        EvalPath::Closed => closed_value(spec, ClosedKind::F4),
        EvalPath::Meijer => Err(EvalError::Domain(
            "f4* has no single-G representation; use the series or closed route".into(),
        )),
    }
}

pub fn f6_star(spec: &AuxSpec, path: EvalPath) -> Result<APComplex> {
    spec.require_domain()?;
    match path {
        EvalPath::Series => series_value(spec, SERIES_F6),
        EvalPath::Closed => closed_value(spec, ClosedKind::F6),
        EvalPath::Meijer => Err(EvalError::Domain(
            "f6* has no single-G representation; use the series or closed route".into(),
        )),
    }
}

/// `f3* = f2* log z + f4*`; the Meijer route instead evaluates its own
/// contour integral, making the identity a cross-check.
pub fn f3_star(spec: &AuxSpec, path: EvalPath) -> Result<APComplex> {
    spec.require_domain()?;
    match path {
        EvalPath::Meijer => {
            scaled_g(spec, 5, &spec.z, sign_right(spec.nu, spec.delta), Contour::Auto)
        }
        p => {
            let f2 = f2_star(spec, p)?;
            let f4 = f4_star(spec, p)?;
            let lz = log_omega(&spec.z).with_prec(spec.wp());
            Ok(&(&f2 * &lz) + &f4)
        }
    }
}

/// `f5* = f6* + f2* (log z)^2 / 2 + f4* log z`; through the Meijer route it
/// is assembled as `f5^v* + i pi f3*` from the two G-representations.
pub fn f5_star(spec: &AuxSpec, path: EvalPath) -> Result<APComplex> {
    spec.require_domain()?;
    match path {
        EvalPath::Meijer => {
            let vee = f5_vee_star(spec, EvalPath::Meijer)?;
            let f3 = f3_star(spec, EvalPath::Meijer)?;
            let wp = spec.wp();
            let ipi = APComplex::new(Float::new(wp), APComplex::pi(wp));
            Ok(&vee + &(&ipi * &f3))
        }
        p => {
            let f2 = f2_star(spec, p)?;
            let f4 = f4_star(spec, p)?;
            let f6 = f6_star(spec, p)?;
            let lz = log_omega(&spec.z).with_prec(spec.wp());
            let half = Float::with_val(spec.wp(), 0.5);
            let sq = (&f2 * &lz.powi(2)).scale(&half);
            Ok(&(&f6 + &sq) + &(&f4 * &lz))
        }
    }
}

/// `f5^v* = f2* ((log(-z))^2 + pi^2)/2 + f4* log(-z) + f6*`, with `log(-z)`
/// on the branch `log(-z) = log z - i pi`; the Meijer route is the `m = 6`
/// contour integral at `-z`.
pub fn f5_vee_star(spec: &AuxSpec, path: EvalPath) -> Result<APComplex> {
    spec.require_domain()?;
    match path {
        EvalPath::Meijer => {
            scaled_g(
                spec,
                6,
                &spec.z.negated(),
                sign_left(spec.nu, spec.delta),
                Contour::Auto,
            )
        }
        p => {
            let f2 = f2_star(spec, p)?;
            let f4 = f4_star(spec, p)?;
            let f6 = f6_star(spec, p)?;
            let wp = spec.wp();
            let lmz = log_omega(&spec.z.negated()).with_prec(wp);
            let pi = APComplex::pi(wp);
            let pi_sq = APComplex::from_float(pi.clone().square());
            let half = Float::with_val(wp, 0.5);
            let quad = (&f2 * &(&lmz.powi(2) + &pi_sq)).scale(&half);
            Ok(&(&quad + &(&f4 * &lmz)) + &f6)
        }
    }
}

// --- z = 1: linear forms in zeta values -------------------------------------

/// An exact linear combination `sum_n c_n zeta(n) + c_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaLinearForm {
    pub zeta_coeffs: BTreeMap<u32, Rational>,
    pub constant: Rational,
}

impl ZetaLinearForm {
    pub fn eval(&self, budget: &PrecisionBudget) -> Result<Float> {
        // The zeta errors are amplified by the (large integer) coefficients;
        // compute them at a correspondingly boosted target.
        let amp: f64 = self
            .zeta_coeffs
            .values()
            .map(|c| c.to_f64().abs())
            .fold(1.0, f64::max);
        let extra = amp.log2().max(0.0).ceil() as u32 + 8;
        let zeta_budget = PrecisionBudget::new(budget.target_bits + extra)
            .with_max_terms(budget.max_terms);
        let wp = zeta_budget.work_prec() + 32;
        let mut acc = Float::with_val(wp, &self.constant);
        for (&n, c) in &self.zeta_coeffs {
            acc += zeta_int(n, &zeta_budget)? * Float::with_val(wp, c);
        }
        Ok(acc)
    }
}

/// The values of `f2*, f4*, f6*` at `z = 1` as exact linear forms in zeta
/// values:
///
/// ```text
/// f2*(1) = alpha*(1) zeta(3) +   beta*(1) zeta(2) - phi*(1)
/// f4*(1) = 3 alpha*(1) zeta(4) + 2 beta*(1) zeta(3) - psi*(1)
/// f6*(1) = 6 alpha*(1) zeta(5) + 3 beta*(1) zeta(4) - xi*(1)
/// ```
///
/// The weight-1 polylogarithm drops out because `gamma*(1) = 0`; that
/// cancellation is asserted here.
pub fn zeta_forms_at_one(nu: u32, delta: u32) -> Result<[ZetaLinearForm; 3]> {
    let pieces = closed_pieces(nu, delta)?;
    let one = Rational::from(1);
    let a1 = pieces.alpha_poly.eval(&one);
    let b1 = pieces.beta_poly.eval(&one);
    let g1 = pieces.gamma_poly.eval(&one);
    if g1 != 0 {
        return Err(EvalError::Assertion(format!(
            "gamma*(1) = {} but the construction requires it to vanish",
            g1
        )));
    }
    let form = |pairs: &[(u32, Rational)], tail: &crate::coeffs::RatPoly| ZetaLinearForm {
        zeta_coeffs: pairs.iter().cloned().collect(),
        constant: -tail.eval(&one),
    };
    Ok([
        form(&[(3, a1.clone()), (2, b1.clone())], &pieces.phi),
        form(
            &[(4, a1.clone() * Rational::from(3)), (3, b1.clone() * Rational::from(2))],
            &pieces.psi,
        ),
        form(
            &[(5, a1 * Rational::from(6)), (4, b1 * Rational::from(3))],
            &pieces.xi,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::omega_normalize;

    fn spec(nu: u32, delta: u32, re: f64, im: f64, bits: u32) -> AuxSpec {
        let budget = PrecisionBudget::new(bits);
        let z = omega_normalize(&APComplex::from_f64(re, im, budget.work_prec() + 64))
            .unwrap();
        AuxSpec::new(nu, delta, z, budget).unwrap()
    }

    fn assert_close(a: &APComplex, b: &APComplex, bits: u32) {
        let d = (a - b).abs();
        assert!(
            d < Float::with_val(64, 1) >> bits,
            "difference {} exceeds 2^-{}\n  a = {}\n  b = {}",
            d.to_f64(),
            bits,
            a,
            b
        );
    }

    #[test]
    fn series_and_closed_agree_for_f2() {
        for (nu, delta) in [(1u32, 2u32), (2, 2), (1, 3)] {
            let s = spec(nu, delta, 2.0, 0.0, 128);
            let a = f2_star(&s, EvalPath::Series).unwrap();
            let b = f2_star(&s, EvalPath::Closed).unwrap();
            assert_close(&a, &b, 124);
        }
    }

    #[test]
    fn series_and_closed_agree_for_f4_f6_complex_point() {
        let s = spec(1, 2, 2.0, 1.0, 128);
        for f in [f4_star, f6_star] {
            let a = f(&s, EvalPath::Series).unwrap();
            let b = f(&s, EvalPath::Closed).unwrap();
            assert_close(&a, &b, 124);
        }
    }

    #[test]
    fn f1_polynomial_value() {
        let s = spec(1, 2, 1.0, 0.0, 96);
        let v = f1_star(&s).unwrap();
        assert!((v.re().clone() + 144u32).abs() < 1e-20);
    }

    #[test]
    fn series_at_one_matches_zeta_form() {
        let s = spec(1, 2, 1.0, 0.0, 96);
        for (f, idx) in [(f2_star as fn(&AuxSpec, EvalPath) -> _, 0usize), (f4_star, 1), (f6_star, 2)] {
            let series = f(&s, EvalPath::Series).unwrap();
            let forms = zeta_forms_at_one(1, 2).unwrap();
            let closed = forms[idx].eval(&s.budget).unwrap();
            assert!((series.re().clone() - &closed).abs() < Float::with_val(64, 1) >> 90);
            assert!(series.im().clone().abs() < Float::with_val(64, 1) >> 90);
        }
    }

    #[test]
    fn zeta_form_pinned_coefficients() {
        let [f2, f4, f6] = zeta_forms_at_one(1, 2).unwrap();
        assert_eq!(f2.zeta_coeffs[&3], Rational::from(-144));
        assert_eq!(f2.zeta_coeffs[&2], Rational::from(408));
        assert_eq!(f4.zeta_coeffs[&4], Rational::from(-432));
        assert_eq!(f4.zeta_coeffs[&3], Rational::from(816));
        assert_eq!(f6.zeta_coeffs[&5], Rational::from(-864));
        assert_eq!(f6.zeta_coeffs[&4], Rational::from(1224));
    }

    #[test]
    fn domain_rejection() {
        // |z| < 1
        let s = spec(1, 2, 0.5, 0.0, 64);
        assert!(matches!(f2_star(&s, EvalPath::Series), Err(EvalError::Domain(_))));
        // Re z < 0
        let s = spec(1, 2, -2.0, 0.0, 64);
        assert!(matches!(f2_star(&s, EvalPath::Closed), Err(EvalError::Domain(_))));
    }

    #[test]
    fn f3_is_f4_at_one() {
        let s = spec(1, 2, 1.0, 0.0, 96);
        let f3 = f3_star(&s, EvalPath::Series).unwrap();
        let f4 = f4_star(&s, EvalPath::Series).unwrap();
        assert_close(&f3, &f4, 90);
    }

    #[test]
    fn five_vee_assembly_consistency() {
        // f5* - f5^v* = i pi f3* holds identically in the assembled routes.
        let s = spec(1, 2, 2.0, 0.0, 128);
        let f5 = f5_star(&s, EvalPath::Closed).unwrap();
        let vee = f5_vee_star(&s, EvalPath::Closed).unwrap();
        let f3 = f3_star(&s, EvalPath::Closed).unwrap();
        let wp = s.wp();
        let ipi = APComplex::new(Float::new(wp), APComplex::pi(wp));
        let rhs = &vee + &(&ipi * &f3);
        assert_close(&f5, &rhs, 120);
    }

    #[test]
    fn scale_factor_value() {
        // (2!/1!)^3 = 8 for nu = 1, delta = 2.
        assert_eq!(scale_factor(1, 2).unwrap(), Rational::from(8));
    }
}
