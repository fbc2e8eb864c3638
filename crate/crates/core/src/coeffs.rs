//! Exact partial-fraction coefficient tables for `R0(t; nu)^3` and the
//! polynomials built from them.
//!
//! The cube of `R0` has poles of order three at `t = -k`, `k = 0..=nu*delta`,
//! and decomposes as
//!
//! ```text
//! R0(t)^3 = sum_k alpha_k (t+k)^-3 + sum_k beta_k (t+k)^-2 + sum_k gamma_k (t+k)^-1
//! ```
//!
//! with `alpha_k` a signed product of cubed binomials and `beta_k`, `gamma_k`
//! expressed through harmonic sums. The polynomials `alpha*(z)`, `beta*(z)`,
//! `gamma*(z)` collect the tables against powers of `z`; `alpha*(z)` equals
//! the polynomial `f1*(z)`. The finite "tail" polynomials `phi*, psi*, xi*`
//! absorb the initial segments of the polylogarithm series in the closed
//! forms of `f2*, f4*, f6*`.

use crate::complex::APComplex;
use crate::error::Result;
use crate::exact::{binomial, harmonic_sum, HarmonicSpec, RParams};
use once_cell::sync::Lazy;
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::sync::Mutex;

/// Dense polynomial with exact rational coefficients, ascending by degree.
///
/// Trailing zero coefficients are trimmed; the zero polynomial has an empty
/// coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| *c == 0) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of the lowest nonzero term, or `None` for zero.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| *c != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation at an exact rational point.
    pub fn eval(&self, z: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    /// Horner evaluation at a complex point, at the point's precision.
    pub fn eval_complex(&self, z: &APComplex) -> APComplex {
        let prec = z.prec();
        let mut acc = APComplex::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + &APComplex::from_rational(c, prec);
        }
        acc
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rational::new(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c.clone();
        }
        RatPoly::new(out)
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a.clone() * b.clone();
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, factor: &Rational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c.clone() * factor.clone()).collect())
    }
}

/// The exact partial-fraction tables `alpha*, beta*, gamma*` for one
/// `(nu, delta)` pair, indexed `k = 0 ..= nu*delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    pub nu: u32,
    pub delta: u32,
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
    pub gamma: Vec<Rational>,
}

static TABLE_CACHE: Lazy<Mutex<BTreeMap<(u32, u32), CoeffTable>>> =
    Lazy::new(|| Mutex::new(BTreeMap::new()));

/// Generate (or fetch from the per-process cache) the coefficient table for
/// `(nu, delta)`.
///
/// `alpha_k = (-1)^(nu + nu*delta + k) C(nu*delta, k)^3 C(nu*delta + k, nu*delta - nu)^3`;
/// `beta_k = 3 alpha_k S_k` with `S_k` the signed harmonic-sum combination;
/// `gamma_k` carries the squared combination and the weight-2 harmonic sums,
/// halved (the defining display fixes `2 gamma_k`).
pub fn coeff_table(nu: u32, delta: u32) -> Result<CoeffTable> {
    let params = RParams::new(nu, delta)?;
    if let Some(t) = TABLE_CACHE.lock().unwrap().get(&(nu, delta)) {
        return Ok(t.clone());
    }
    let nd = params.b; // nu * delta
    let mut alpha = Vec::with_capacity(nd as usize + 1);
    let mut beta = Vec::with_capacity(nd as usize + 1);
    let mut gamma = Vec::with_capacity(nd as usize + 1);
    for k in 0..=nd {
        let sign = if (nu + nd + k) % 2 == 0 { 1 } else { -1 };
        let a: Integer = binomial(nd, k as i64).pow(3) * binomial(nd + k, (nd - nu) as i64).pow(3)
            * Integer::from(sign);
        let a = Rational::from(a);

        // Signed harmonic combination at weight 1 and weight 2.
        let s1 = -harmonic_sum(HarmonicSpec::new(1, (nu + k + 1) as i64, (nd + k) as i64))
            - harmonic_sum(HarmonicSpec::new(1, 1, (nd - k) as i64))
            + harmonic_sum(HarmonicSpec::new(1, 1, k as i64));
        let s2 = harmonic_sum(HarmonicSpec::new(2, (nu + k + 1) as i64, (nd + k) as i64))
            - harmonic_sum(HarmonicSpec::new(2, 1, (nd - k) as i64))
            - harmonic_sum(HarmonicSpec::new(2, 1, k as i64));

        let b = a.clone() * Rational::from(3) * s1.clone();
        let three_s1 = Rational::from(3) * s1;
        let g = (a.clone() * three_s1.clone() * three_s1
            - a.clone() * Rational::from(3) * s2)
            / Rational::from(2);
        alpha.push(a);
        beta.push(b);
        gamma.push(g);
    }
    let table = CoeffTable { nu, delta, alpha, beta, gamma };
    TABLE_CACHE.lock().unwrap().insert((nu, delta), table.clone());
    Ok(table)
}

impl CoeffTable {
    /// `sum_k gamma_k`; vanishes identically (the weight-1 coefficients of a
    /// function regular at infinity must cancel).
    pub fn gamma_sum(&self) -> Rational {
        self.gamma.iter().fold(Rational::new(), |acc, g| acc + g.clone())
    }
}

/// The polynomial `f1*(z) = z^nu (-1)^(nu*delta) sum_k (-z)^k C(nu*delta,k)^3
/// C(nu*delta+k, nu*d1)^3`.
///
/// Degree is `nu + nu*delta`; the lowest nonzero term has degree `nu`.
pub fn f1_star_poly(nu: u32, delta: u32) -> Result<RatPoly> {
    let params = RParams::new(nu, delta)?;
    let nd = params.b;
    let nd1 = nu * params.d1();
    let mut coeffs = vec![Rational::new(); (nu + nd) as usize + 1];
    for k in 0..=nd {
        let sign = if (nd + k) % 2 == 0 { 1 } else { -1 };
        let c: Integer = binomial(nd, k as i64).pow(3) * binomial(nd + k, nd1 as i64).pow(3)
            * Integer::from(sign);
        coeffs[(nu + k) as usize] = Rational::from(c);
    }
    Ok(RatPoly::new(coeffs))
}

/// The three coefficient polynomials `(-z)^nu sum_k c_k z^k` for
/// `c in {alpha, beta, gamma}`. The alpha polynomial equals [`f1_star_poly`].
pub fn coeff_polys(table: &CoeffTable) -> (RatPoly, RatPoly, RatPoly) {
    let lift = |cs: &[Rational]| {
        let nu = table.nu as usize;
        let sign = if nu % 2 == 0 { 1 } else { -1 };
        let mut coeffs = vec![Rational::new(); nu + cs.len()];
        for (k, c) in cs.iter().enumerate() {
            coeffs[nu + k] = c.clone() * Rational::from(sign);
        }
        RatPoly::new(coeffs)
    };
    (lift(&table.alpha), lift(&table.beta), lift(&table.gamma))
}

/// The finite tail polynomials `phi*, psi*, xi*`.
///
/// Each is `(-z)^nu sum_k c_k z^k sum_{t=1}^{k+nu} z^(-t) t^(-w)` collected
/// into a polynomial (all exponents `nu + k - t` are nonnegative), with
/// multiplier/weight triples `(1,1,1)/(3,2,1)` for `phi*`, `(3,2,1)/(4,3,2)`
/// for `psi*`, and `(6,3,1)/(5,4,3)` for `xi*` applied to
/// `(alpha, beta, gamma)`.
pub fn tail_polys(table: &CoeffTable) -> (RatPoly, RatPoly, RatPoly) {
    let phi = tail_poly(table, [1, 1, 1], [3, 2, 1]);
    let psi = tail_poly(table, [3, 2, 1], [4, 3, 2]);
    let xi = tail_poly(table, [6, 3, 1], [5, 4, 3]);
    (phi, psi, xi)
}

fn tail_poly(table: &CoeffTable, mult: [u32; 3], weight: [u32; 3]) -> RatPoly {
    let nu = table.nu;
    let nd = table.alpha.len() as u32 - 1;
    let sign: i32 = if nu % 2 == 0 { 1 } else { -1 };
    let mut coeffs = vec![Rational::new(); (nu + nd) as usize];
    for k in 0..=nd {
        let rows = [&table.alpha[k as usize], &table.beta[k as usize], &table.gamma[k as usize]];
        for t in 1..=(k + nu) {
            // exponent nu + k - t ranges over 0 .. nu + k
            let e = (nu + k - t) as usize;
            for i in 0..3 {
                let term = rows[i].clone() * Rational::from(mult[i] as i32 * sign)
                    / Rational::from(Integer::from(t).pow(weight[i]));
                coeffs[e] += term;
            }
        }
    }
    RatPoly::new(coeffs)
}

// --- serialization -----------------------------------------------------------
//
// Rationals serialize as {"num": "...", "den": "..."} with decimal strings so
// the round trip is bit exact regardless of magnitude.

#[derive(Serialize, Deserialize)]
struct RatRepr {
    num: String,
    den: String,
}

fn rat_to_repr(r: &Rational) -> RatRepr {
    RatRepr { num: r.numer().to_string(), den: r.denom().to_string() }
}

fn repr_to_rat(r: &RatRepr) -> Option<Rational> {
    let num: Integer = r.num.parse().ok()?;
    let den: Integer = r.den.parse().ok()?;
    if den <= 0 {
        return None;
    }
    Some(Rational::from((num, den)))
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let reprs: Vec<RatRepr> = self.coeffs.iter().map(rat_to_repr).collect();
        reprs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let reprs: Vec<RatRepr> = Vec::deserialize(d)?;
        let coeffs = reprs
            .iter()
            .map(|r| repr_to_rat(r).ok_or_else(|| D::Error::custom("invalid rational")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(RatPoly::new(coeffs))
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffTableRepr {
    nu: u32,
    delta: u32,
    alpha: Vec<RatRepr>,
    beta: Vec<RatRepr>,
    gamma: Vec<RatRepr>,
}

impl Serialize for CoeffTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoeffTableRepr {
            nu: self.nu,
            delta: self.delta,
            alpha: self.alpha.iter().map(rat_to_repr).collect(),
            beta: self.beta.iter().map(rat_to_repr).collect(),
            gamma: self.gamma.iter().map(rat_to_repr).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoeffTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CoeffTableRepr::deserialize(d)?;
        let conv = |v: &[RatRepr]| {
            v.iter()
                .map(|r| repr_to_rat(r).ok_or_else(|| D::Error::custom("invalid rational")))
                .collect::<std::result::Result<Vec<_>, D::Error>>()
        };
        Ok(CoeffTable {
            nu: repr.nu,
            delta: repr.delta,
            alpha: conv(&repr.alpha)?,
            beta: conv(&repr.beta)?,
            gamma: conv(&repr.gamma)?,
        })
    }
}
