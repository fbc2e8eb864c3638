//! The pair of linear forms in odd/even zeta values attached to the cubic
//! construction, and a brute-force scan of the simultaneous-approximation
//! quality measure over integer coefficients.
//!
//! The forms are
//!
//! ```text
//! phi_1(x) = 2 zeta(3) x1 + 3 zeta(4) x2
//! phi_2(x) = 3 zeta(4) x1 + 6 zeta(5) x2
//! ```
//!
//! with the symmetric coefficient matrix `(i k + (i-1)(k-1) + 1) = [[2,3],[3,6]]`.
//! The scan minimizes `(||phi_1|| + ||phi_2||) (|x1| + |x2|)^gamma` over
//! `0 < |x1| + |x2| <= N`, where `||.||` is the distance to the nearest
//! integer; the exponent `gamma` calibrates the conjectured lower bound.

use crate::error::{EvalError, Result};
use crate::numerics::{zeta_int, PrecisionBudget};
use rug::ops::Pow;
use rug::{Float, Rational};

/// The exact 2x2 coefficient matrix of the two forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormCoeffs {
    pub matrix: [[Rational; 2]; 2],
}

impl FormCoeffs {
    /// Entries `c[i][k] = i k + (i-1)(k-1) + 1` for `i, k = 1, 2`.
    pub fn standard() -> Self {
        let entry = |i: i64, k: i64| Rational::from(i * k + (i - 1) * (k - 1) + 1);
        FormCoeffs {
            matrix: [
                [entry(1, 1), entry(1, 2)],
                [entry(2, 1), entry(2, 2)],
            ],
        }
    }

    /// The zeta weight multiplying `x_k` in form `i` (both zero-based):
    /// `zeta(3)` and `zeta(4)` in the first row, `zeta(4)` and `zeta(5)` in
    /// the second.
    pub fn zeta_weight(i: usize, k: usize) -> u32 {
        (i + k + 3) as u32
    }
}

/// `phi_i(x1, x2)` for `i` in `{1, 2}` (passed as `0` or `1`).
pub fn phi(i: usize, x: (i64, i64), budget: &PrecisionBudget) -> Result<Float> {
    assert!(i < 2, "form index must be 0 or 1");
    let coeffs = FormCoeffs::standard();
    let wp = budget.work_prec() + 32;
    let mut acc = Float::new(wp);
    for (k, xk) in [x.0, x.1].into_iter().enumerate() {
        let zeta = zeta_int(FormCoeffs::zeta_weight(i, k), budget)?;
        acc += zeta * Float::with_val(wp, &coeffs.matrix[i][k]) * Float::with_val(wp, xk);
    }
    Ok(acc)
}

/// Distance to the nearest integer.
pub fn dist_to_int(x: &Float) -> Float {
    let prec = x.prec();
    let r = x.clone().round();
    Float::with_val(prec, x - &r).abs()
}

/// Outcome of a scan: the minimizing pair, the minimum of the quality
/// measure, and the smallest combined fractional distance seen (used for the
/// precision-sufficiency check).
#[derive(Debug, Clone)]
pub struct ScanResult {
    pub n: u64,
    pub gamma: Float,
    pub min_value: Float,
    pub argmin: (i64, i64),
    pub min_distance: Float,
    pub precision_bits: u32,
}

/// Scan `(||phi_1|| + ||phi_2||) (|x1| + |x2|)^gamma` over all integer pairs
/// with `0 < |x1| + |x2| <= N`.
///
/// Zeta values are computed once at `target + ceil(gamma log2 N) + 16` bits
/// so the `(|x1|+|x2|)^gamma` amplification cannot eat the target precision;
/// if the rounding-error bound for the distances exceeds half the smallest
/// observed distance the scan refuses to answer.
pub fn scan(n: u64, gamma: &Float, budget: &PrecisionBudget) -> Result<ScanResult> {
    if n == 0 {
        return Err(EvalError::Domain("scan needs N >= 1".into()));
    }
    let n_i = i64::try_from(n)
        .map_err(|_| EvalError::Domain("scan bound does not fit in i64".into()))?;
    let log2n = (n as f64).log2().max(0.0);
    let extra = (gamma.to_f64() * log2n).ceil() as u32 + 16;
    let zeta_budget = PrecisionBudget::new(budget.target_bits + extra)
        .with_max_terms(budget.max_terms);
    let wp = zeta_budget.work_prec() + 32;
    let gamma = Float::with_val(wp, gamma);

    let coeffs = FormCoeffs::standard();
    // zeta(3), zeta(4), zeta(5) once, at the boosted precision.
    let zetas = [
        zeta_int(3, &zeta_budget)?,
        zeta_int(4, &zeta_budget)?,
        zeta_int(5, &zeta_budget)?,
    ];
    // Row i of the forms uses zeta(i+k+1): (zeta3, zeta4) and (zeta4, zeta5).
    let weights: [[Float; 2]; 2] = [
        [
            Float::with_val(wp, &coeffs.matrix[0][0]) * &zetas[0],
            Float::with_val(wp, &coeffs.matrix[0][1]) * &zetas[1],
        ],
        [
            Float::with_val(wp, &coeffs.matrix[1][0]) * &zetas[1],
            Float::with_val(wp, &coeffs.matrix[1][1]) * &zetas[2],
        ],
    ];

    let mut best: Option<ScanResult> = None;
    let mut min_distance: Option<Float> = None;
    // Lexicographic iteration gives the deterministic tie-break: the first
    // pair attaining the minimum wins and later ties do not replace it.
    for x1 in -n_i..=n_i {
        for x2 in -n_i..=n_i {
            let size = x1.unsigned_abs() + x2.unsigned_abs();
            if size == 0 || size > n {
                continue;
            }
            let mut dist_sum = Float::new(wp);
            for row in &weights {
                let v = Float::with_val(wp, &row[0]) * Float::with_val(wp, x1)
                    + Float::with_val(wp, &row[1]) * Float::with_val(wp, x2);
                dist_sum += dist_to_int(&v);
            }
            match &min_distance {
                Some(d) if *d <= dist_sum => {}
                _ => min_distance = Some(dist_sum.clone()),
            }
            let value = dist_sum.clone()
                * Float::with_val(wp, size).pow(&gamma);
            let better = match &best {
                None => true,
                Some(b) => value < b.min_value,
            };
            if better {
                best = Some(ScanResult {
                    n,
                    gamma: gamma.clone(),
                    min_value: value,
                    argmin: (x1, x2),
                    min_distance: dist_sum,
                    precision_bits: zeta_budget.target_bits,
                });
            }
        }
    }
    let mut result = best.expect("N >= 1 yields at least one pair");
    let observed_min = min_distance.expect("at least one pair");
    // Error bound for each form value: |x| <= N against zetas known to
    // 2^-(target+extra), plus rounding in the two products and the sum.
    let err_bound = Float::with_val(wp, 8 * n) * zeta_budget.eps(0);
    if err_bound > observed_min.clone() / 2u32 {
        return Err(EvalError::PrecisionTooLow(format!(
            "distance error bound {} exceeds half the smallest observed \
             distance {}; raise target_bits",
            err_bound.to_f64(),
            observed_min.to_f64()
        )));
    }
    result.min_distance = observed_min;
    Ok(result)
}
