//! Meijer G-function evaluation by contour integration.
//!
//! The integrand is
//!
//! ```text
//! g(s) = z^s  prod_{j<=m} Gamma(b_j - s)  prod_{j<=n} Gamma(1 - a_j + s)
//!            ----------------------------------------------------------
//!            prod_{j>m} Gamma(1 - b_j + s)  prod_{j>n} Gamma(a_j - s)
//! ```
//!
//! integrated over one of three contours: a vertical line `L0` separating the
//! two families of numerator poles, a right loop `L1` around the poles of the
//! `Gamma(b_j - s)` factors, or a left loop `L2` around the poles of the
//! `Gamma(1 - a_j + s)` factors. The loop contours reduce to residue sums
//! with sign `-1` for `L1` and `+1` for `L2`; residues are computed by
//! quadrature on small circles, so higher-order poles need no symbolic
//! differentiation.
//!
//! The branch of `z^s` is fixed by the reduced argument carried by
//! [`OmegaPoint`], so evaluation is single-valued on the cut domain.

use crate::complex::APComplex;
use crate::error::{EvalError, Result};
use crate::gamma::gamma;
use crate::numerics::{log_omega, OmegaPoint, PrecisionBudget};
use rug::{Float, Integer, Rational};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Integration contour selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contour {
    /// Vertical line separating the two pole families.
    L0,
    /// Right loop: minus the sum of residues at `b_j + 0, 1, 2, ...`.
    L1,
    /// Left loop: plus the sum of residues at `a_j - 1, -2, ...`.
    L2,
    /// Pick automatically from the convergence report.
    Auto,
}

impl fmt::Display for Contour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contour::L0 => write!(f, "L0"),
            Contour::L1 => write!(f, "L1"),
            Contour::L2 => write!(f, "L2"),
            Contour::Auto => write!(f, "auto"),
        }
    }
}

/// Convergence condition labels. The A-family justifies the line contour,
/// the B-family the right loop, the C-family the left loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CondLabel {
    A1,
    A2,
    B1,
    B2,
    B3,
    C1,
    C2,
    C3,
}

impl fmt::Display for CondLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl CondLabel {
    pub const ALL: [CondLabel; 8] = [
        CondLabel::A1,
        CondLabel::A2,
        CondLabel::B1,
        CondLabel::B2,
        CondLabel::B3,
        CondLabel::C1,
        CondLabel::C2,
        CondLabel::C3,
    ];

    /// The contour this condition justifies.
    pub fn contour(&self) -> Contour {
        match self {
            CondLabel::A1 | CondLabel::A2 => Contour::L0,
            CondLabel::B1 | CondLabel::B2 | CondLabel::B3 => Contour::L1,
            CondLabel::C1 | CondLabel::C2 | CondLabel::C3 => Contour::L2,
        }
    }
}

/// Which convergence conditions hold at a given point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub holds: BTreeSet<CondLabel>,
    /// `sum b_j - sum a_j`, exact.
    pub delta_star: Rational,
}

impl ConvergenceReport {
    pub fn holds(&self, label: CondLabel) -> bool {
        self.holds.contains(&label)
    }

    /// Contours justified by at least one condition, in preference order
    /// `L1, L2, L0`.
    pub fn admissible_contours(&self) -> Vec<Contour> {
        let mut out = Vec::new();
        for c in [Contour::L1, Contour::L2, Contour::L0] {
            if self.holds.iter().any(|l| l.contour() == c) {
                out.push(c);
            }
        }
        out
    }
}

/// One pole of the integrand enclosed by a loop contour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleInfo {
    pub location: Rational,
    pub order: u32,
    /// Indices of the generating parameters: into `b[..m]` for `L1`,
    /// into `a[..n]` for `L2`.
    pub generators: Vec<usize>,
}

/// Result of a full evaluation: the value, the convergence report, the
/// contour actually used, and how many residues went into a loop sum.
#[derive(Debug, Clone)]
pub struct GValue {
    pub value: APComplex,
    pub report: ConvergenceReport,
    pub contour: Contour,
    pub poles_used: u64,
}

/// Parameters `(m, n; a_1..a_p; b_1..b_q)` of a Meijer G-function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GParams {
    m: u32,
    n: u32,
    a: Vec<Rational>,
    b: Vec<Rational>,
}

fn int_val(x: &Rational) -> Option<Integer> {
    if x.is_integer() {
        Some(x.numer().clone())
    } else {
        None
    }
}

impl GParams {
    /// Validates `m <= q`, `n <= p`, and that no upper `a_j` (`j <= n`)
    /// differs from a lower `b_k` (`k <= m`) by a positive integer — that
    /// would put a pole of one numerator family on top of the other and no
    /// contour could separate them.
    pub fn new(m: u32, n: u32, a: Vec<Rational>, b: Vec<Rational>) -> Result<Self> {
        if m as usize > b.len() {
            return Err(EvalError::InvalidParams(format!(
                "m = {} exceeds q = {}",
                m,
                b.len()
            )));
        }
        if n as usize > a.len() {
            return Err(EvalError::InvalidParams(format!(
                "n = {} exceeds p = {}",
                n,
                a.len()
            )));
        }
        for j in 0..n as usize {
            for k in 0..m as usize {
                let d = a[j].clone() - &b[k];
                if let Some(d) = int_val(&d) {
                    if d >= 1 {
                        return Err(EvalError::InvalidParams(format!(
                            "a[{}] - b[{}] = {} is a positive integer; the two \
                             numerator pole families overlap",
                            j, k, d
                        )));
                    }
                }
            }
        }
        Ok(GParams { m, n, a, b })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.a.len() as u32
    }

    pub fn q(&self) -> u32 {
        self.b.len() as u32
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    /// `delta* = sum b_j - sum a_j`, exact.
    pub fn delta_star(&self) -> Rational {
        let sb = self.b.iter().fold(Rational::new(), |s, x| s + x);
        let sa = self.a.iter().fold(Rational::new(), |s, x| s + x);
        sb - sa
    }

    /// `m + n - (p + q)/2`, the multiple of `pi` bounding `|arg z|` in the
    /// A-conditions.
    pub fn arg_factor(&self) -> Rational {
        Rational::from(self.m + self.n)
            - Rational::from((self.p() as i64 + self.q() as i64, 2))
    }

    /// Order of the integrand's pole at `s0`: numerator Gamma poles minus
    /// denominator reciprocal-Gamma zeros. Non-positive means removable.
    pub fn pole_order(&self, s0: &Rational) -> i64 {
        let mut order = 0i64;
        for k in 0..self.m as usize {
            if let Some(d) = int_val(&(s0.clone() - &self.b[k])) {
                if d >= 0 {
                    order += 1;
                }
            }
        }
        for j in 0..self.n as usize {
            if let Some(d) = int_val(&(self.a[j].clone() - s0 - Rational::from(1))) {
                if d >= 0 {
                    order += 1;
                }
            }
        }
        for k in self.m as usize..self.b.len() {
            if let Some(d) = int_val(&(self.b[k].clone() - s0 - Rational::from(1))) {
                if d >= 0 {
                    order -= 1;
                }
            }
        }
        for j in self.n as usize..self.a.len() {
            if let Some(d) = int_val(&(s0.clone() - &self.a[j])) {
                if d >= 0 {
                    order -= 1;
                }
            }
        }
        order
    }

    /// Convergence classification at `z`. Comparisons against exact
    /// quantities (`delta*`, the arg bound) are exact whenever the point's
    /// argument is an exact multiple of `pi` (real or imaginary axis).
    pub fn classify(&self, z: &OmegaPoint) -> ConvergenceReport {
        let ds = self.delta_star();
        let (p, q) = (self.p(), self.q());
        let factor = self.arg_factor();

        // |z| vs 1, decided on the float value (exact for exactly
        // representable inputs, which covers every boundary case we pin).
        let norm = z.value().norm_sqr();
        let lt1 = norm < 1u32;
        let eq1 = norm == 1u32;
        let gt1 = norm > 1u32;

        // |arg z| vs factor * pi.
        let (arg_lt, arg_le) = match z.arg_over_pi_exact() {
            Some(apie) => {
                let abs = apie.abs();
                (abs < factor, abs <= factor)
            }
            None => {
                let prec = z.prec();
                let bound = Float::with_val(prec, &factor) * APComplex::pi(prec);
                let abs_arg = z.arg().clone().abs();
                (abs_arg < bound, abs_arg <= bound)
            }
        };

        let minus_one = Rational::from(-1);
        let slope_cond =
            Rational::from((p as i64 - q as i64, 2)) + ds.clone() < minus_one;
        let ds_lt_m1 = ds < minus_one;

        let mut holds = BTreeSet::new();
        if factor > 0 && arg_lt {
            holds.insert(CondLabel::A1);
        }
        if factor >= 0 && arg_le && slope_cond {
            holds.insert(CondLabel::A2);
        }
        if p < q {
            holds.insert(CondLabel::B1);
        }
        if p >= 1 && p <= q && lt1 {
            holds.insert(CondLabel::B2);
        }
        if p >= 1 && p <= q && (lt1 || eq1) && ds_lt_m1 {
            holds.insert(CondLabel::B3);
        }
        if q < p {
            holds.insert(CondLabel::C1);
        }
        if q >= 1 && q <= p && gt1 {
            holds.insert(CondLabel::C2);
        }
        if q >= 1 && q <= p && (gt1 || eq1) && ds_lt_m1 {
            holds.insert(CondLabel::C3);
        }
        ConvergenceReport { holds, delta_star: ds }
    }

    /// Poles enclosed by a loop contour, sorted in summation order (ascending
    /// location for `L1`, descending for `L2`), at most `max_poles` of them.
    pub fn enumerate_poles(&self, contour: Contour, max_poles: usize) -> Result<Vec<PoleInfo>> {
        let starts: Vec<Rational> = match contour {
            Contour::L1 => self.b[..self.m as usize].to_vec(),
            Contour::L2 => self.a[..self.n as usize]
                .iter()
                .map(|a| a.clone() - Rational::from(1))
                .collect(),
            _ => {
                return Err(EvalError::ContourMismatch(
                    "pole enumeration is defined for the loop contours L1 and L2".into(),
                ))
            }
        };
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        let spread = self.lattice_spread();
        let mut round: u64 = 0;
        loop {
            let mut cands: Vec<Rational> = Vec::new();
            for c in &starts {
                let s0 = match contour {
                    Contour::L1 => c.clone() + Rational::from(round),
                    _ => c.clone() - Rational::from(round),
                };
                if seen.insert(s0.clone()) {
                    cands.push(s0);
                }
            }
            cands.sort();
            if contour == Contour::L2 {
                cands.reverse();
            }
            let mut any = false;
            for s0 in cands {
                let order = self.pole_order(&s0);
                if order <= 0 {
                    continue;
                }
                any = true;
                let generators = self.generators(&s0, contour);
                out.push(PoleInfo { location: s0, order: order as u32, generators });
                if out.len() >= max_poles {
                    return Ok(out);
                }
            }
            // Beyond the lattice spread, per-family orders are constant in
            // the round index, so one all-removable round means done.
            if !any && round > spread {
                return Ok(out);
            }
            round += 1;
        }
    }

    fn generators(&self, s0: &Rational, contour: Contour) -> Vec<usize> {
        let mut out = Vec::new();
        match contour {
            Contour::L1 => {
                for k in 0..self.m as usize {
                    if let Some(d) = int_val(&(s0.clone() - &self.b[k])) {
                        if d >= 0 {
                            out.push(k);
                        }
                    }
                }
            }
            Contour::L2 => {
                for j in 0..self.n as usize {
                    if let Some(d) =
                        int_val(&(self.a[j].clone() - s0 - Rational::from(1)))
                    {
                        if d >= 0 {
                            out.push(j);
                        }
                    }
                }
            }
            _ => {}
        }
        out
    }

    /// True when a loop contour encloses only finitely many poles: beyond
    /// the lattice spread the order along each generating family is constant,
    /// so one representative per family decides it. A finite pole set makes
    /// the loop integral a finite residue sum, convergent for every `z != 0`
    /// even when no B/C-condition holds.
    pub fn loop_pole_set_is_finite(&self, contour: Contour) -> bool {
        let probe = Rational::from(self.lattice_spread() + 1);
        match contour {
            Contour::L1 => {
                self.m >= 1
                    && (0..self.m as usize)
                        .all(|k| self.pole_order(&(self.b[k].clone() + &probe)) <= 0)
            }
            Contour::L2 => {
                self.n >= 1
                    && (0..self.n as usize).all(|j| {
                        self.pole_order(&(self.a[j].clone() - Rational::from(1) - &probe))
                            <= 0
                    })
            }
            _ => false,
        }
    }

    /// Ceiling of the largest gap between any two parameters; beyond this
    /// many lattice steps the pole/zero pattern of each family is periodic.
    fn lattice_spread(&self) -> u64 {
        let all: Vec<&Rational> = self.a.iter().chain(self.b.iter()).collect();
        match (all.iter().min(), all.iter().max()) {
            (Some(lo), Some(hi)) => {
                let gap = (*hi).clone() - *lo;
                let c = gap.ceil();
                c.numer().to_u64().unwrap_or(u64::MAX).saturating_add(2)
            }
            _ => 2,
        }
    }

    /// Distance from `s0` to the nearest *other* pole of the numerator
    /// Gamma factors (the only singularities of the integrand).
    fn nearest_other_singularity(&self, s0: &Rational) -> Rational {
        let mut best: Option<Rational> = None;
        let mut consider = |d: Rational| {
            let d = d.abs();
            if d != 0 {
                match &best {
                    Some(b) if *b <= d => {}
                    _ => best = Some(d),
                }
            }
        };
        // Ascending lattices {b_k, b_k + 1, ...}.
        for k in 0..self.m as usize {
            let delta = s0.clone() - &self.b[k];
            let fl = delta.clone().floor();
            for cand in [fl.clone(), fl + Rational::from(1), Rational::new()] {
                if cand >= 0 {
                    consider(delta.clone() - cand);
                }
            }
        }
        // Descending lattices {a_j - 1, a_j - 2, ...}.
        for j in 0..self.n as usize {
            let delta = self.a[j].clone() - Rational::from(1) - s0;
            let fl = delta.clone().floor();
            for cand in [fl.clone(), fl + Rational::from(1), Rational::new()] {
                if cand >= 0 {
                    consider(delta.clone() - cand);
                }
            }
        }
        best.unwrap_or_else(|| Rational::from(1))
    }
}

/// The integrand `g(s)`, with Gamma arguments grouped by sign of `s` and
/// fractional class so each evaluation point needs only one Gamma call per
/// group; the remaining factors are rational shift products.
pub struct Integrand {
    groups: Vec<Group>,
    log_z: APComplex,
    prec: u32,
}

struct Group {
    /// `+1` for arguments of the form `c + s`, `-1` for `c - s`.
    sign: i8,
    base: Rational,
    /// `(shift, exponent)` pairs, ascending shift; the Gamma at `base + shift`
    /// enters with the given exponent.
    entries: Vec<(u32, i32)>,
    total_exp: i32,
}

impl Integrand {
    pub fn new(params: &GParams, z: &OmegaPoint, prec: u32) -> Self {
        let mut terms: Vec<(Rational, i8, i32)> = Vec::new();
        for k in 0..params.m as usize {
            terms.push((params.b[k].clone(), -1, 1));
        }
        for j in 0..params.n as usize {
            terms.push((Rational::from(1) - &params.a[j], 1, 1));
        }
        for k in params.m as usize..params.b.len() {
            terms.push((Rational::from(1) - &params.b[k], 1, -1));
        }
        for j in params.n as usize..params.a.len() {
            terms.push((params.a[j].clone(), -1, -1));
        }

        let mut buckets: BTreeMap<(i8, Rational), Vec<(Rational, i32)>> = BTreeMap::new();
        for (c, sign, exp) in terms {
            let frac = c.clone() - c.clone().floor();
            buckets.entry((sign, frac)).or_default().push((c, exp));
        }
        let mut groups = Vec::new();
        for ((sign, _), list) in buckets {
            let base = list.iter().map(|(c, _)| c.clone()).min().unwrap();
            let mut by_shift: BTreeMap<u32, i32> = BTreeMap::new();
            let mut total = 0i32;
            for (c, exp) in &list {
                let shift_int = int_val(&(c.clone() - &base))
                    .expect("same fractional class")
                    .to_u32()
                    .expect("parameter spread fits in u32");
                *by_shift.entry(shift_int).or_insert(0) += exp;
                total += exp;
            }
            groups.push(Group {
                sign,
                base,
                entries: by_shift.into_iter().collect(),
                total_exp: total,
            });
        }
        Integrand { groups, log_z: log_omega(z).with_prec(prec), prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// `g(s)` at working precision.
    pub fn eval(&self, s: &APComplex) -> APComplex {
        let prec = self.prec;
        let s = s.with_prec(prec);
        let mut acc = (&s * &self.log_z).exp(); // z^s under the fixed branch
        for g in &self.groups {
            let base = APComplex::from_rational(&g.base, prec);
            let arg = if g.sign < 0 { &base - &s } else { &base + &s };
            if g.total_exp != 0 {
                acc = &acc * &gamma(&arg, prec).powi(g.total_exp as i64);
            }
            // Gamma(arg + shift) = Gamma(arg) * prod_{t<shift} (arg + t):
            // apply the running shift product per entry.
            let mut run = APComplex::one(prec);
            let mut factor = arg.clone();
            let mut at = 0u32;
            for &(shift, exp) in &g.entries {
                while at < shift {
                    run = &run * &factor;
                    factor = &factor + &APComplex::one(prec);
                    at += 1;
                }
                if shift > 0 && exp != 0 {
                    acc = &acc * &run.powi(exp as i64);
                }
            }
        }
        acc
    }
}

/// Residue of the integrand at `s0` by trapezoid quadrature on a circle of
/// radius `min(1/4, d/2)` with `d` the distance to the nearest other
/// singularity. The node count doubles until two successive answers agree to
/// `goal`; far poles with tiny residues converge after a handful of nodes.
fn residue_quad(
    integrand: &Integrand,
    s0: &Rational,
    radius: &Rational,
    goal: &Float,
) -> Result<APComplex> {
    let wp = integrand.prec();
    let rf = Float::with_val(wp, radius);
    let center = APComplex::from_rational(s0, wp);
    let mut m: u32 = 16;
    let mut prev: Option<APComplex> = None;
    while m <= 1 << 14 {
        let mut sum = APComplex::zero(wp);
        for j in 0..m {
            let theta =
                Float::with_val(wp, 2 * j) * APComplex::pi(wp) / Float::with_val(wp, m);
            let (sin, cos) = theta.sin_cos(Float::new(wp));
            let e = APComplex::new(cos, sin);
            let sj = &center + &e.scale(&rf);
            sum = &sum + &(&integrand.eval(&sj) * &e);
        }
        let val = sum.scale(&(rf.clone() / Float::with_val(wp, m)));
        if let Some(p) = &prev {
            if (&val - p).abs() <= *goal {
                return Ok(val);
            }
        }
        prev = Some(val);
        m *= 2;
    }
    Err(EvalError::BudgetExceeded(format!(
        "residue quadrature at s = {} did not stabilize",
        s0
    )))
}

/// Residue of the contour integrand at the pole `s0`; zero when the point is
/// removable.
pub fn residue_at(
    params: &GParams,
    z: &OmegaPoint,
    s0: &Rational,
    budget: &PrecisionBudget,
) -> Result<APComplex> {
    let wp = budget.work_prec() + 32;
    if params.pole_order(s0) <= 0 {
        return Ok(APComplex::zero(wp));
    }
    let d = params.nearest_other_singularity(s0);
    let r = std::cmp::min(Rational::from((1, 2)), d) / Rational::from(2);
    if r <= 0 {
        return Err(EvalError::RadiusTooLarge(r));
    }
    let integrand = Integrand::new(params, z, wp);
    residue_quad(&integrand, s0, &r, &budget.eps(-4))
}

const MAX_RESIDUES: u64 = 20_000;

fn residue_sum(
    params: &GParams,
    z: &OmegaPoint,
    contour: Contour,
    budget: &PrecisionBudget,
) -> Result<(APComplex, u64)> {
    let wp = budget.work_prec() + 32;
    let sign: i32 = if contour == Contour::L1 { -1 } else { 1 };
    let starts: Vec<Rational> = match contour {
        Contour::L1 => params.b[..params.m as usize].to_vec(),
        _ => params.a[..params.n as usize]
            .iter()
            .map(|a| a.clone() - Rational::from(1))
            .collect(),
    };
    if starts.is_empty() {
        return Ok((APComplex::zero(wp), 0));
    }
    let integrand = Integrand::new(params, z, wp);
    let goal = budget.eps(-2);
    let per_pole_goal = budget.eps(-14);
    let spread = params.lattice_spread();

    let mut acc = APComplex::zero(wp);
    let mut seen = BTreeSet::new();
    let mut poles_used: u64 = 0;
    let mut last_mag: Option<Float> = None;
    let mut ratios: Vec<f64> = Vec::new();

    let mut round: u64 = 0;
    loop {
        let mut cands: Vec<Rational> = Vec::new();
        for c in &starts {
            let s0 = match contour {
                Contour::L1 => c.clone() + Rational::from(round),
                _ => c.clone() - Rational::from(round),
            };
            if seen.insert(s0.clone()) {
                cands.push(s0);
            }
        }
        cands.sort();
        if contour != Contour::L1 {
            cands.reverse();
        }
        let mut any = false;
        for s0 in cands {
            if params.pole_order(&s0) <= 0 {
                continue;
            }
            any = true;
            let d = params.nearest_other_singularity(&s0);
            let r = std::cmp::min(Rational::from((1, 2)), d) / Rational::from(2);
            let res = residue_quad(&integrand, &s0, &r, &per_pole_goal)?;
            if sign < 0 {
                acc = &acc - &res;
            } else {
                acc = &acc + &res;
            }
            poles_used += 1;
            if poles_used > MAX_RESIDUES {
                return Err(EvalError::BudgetExceeded(
                    "loop contour: residue count exceeded the budget".into(),
                ));
            }
            let mag = res.abs();
            if let Some(lm) = &last_mag {
                if lm.is_sign_positive() && !lm.is_zero() {
                    let rho = (mag.clone() / lm.clone()).to_f64();
                    ratios.push(rho);
                    if ratios.len() > 4 {
                        ratios.remove(0);
                    }
                }
            }
            last_mag = Some(mag.clone());
            // Geometric tail bound once the residues decay steadily.
            if round > spread && ratios.len() >= 3 {
                let rho = ratios.iter().cloned().fold(0.0f64, f64::max);
                if rho < 0.95 {
                    let tail = mag * Float::with_val(wp, 4.0 * rho / (1.0 - rho));
                    if tail < goal {
                        return Ok((acc, poles_used));
                    }
                }
            }
        }
        // Beyond the lattice spread the pole pattern is periodic per family:
        // an all-removable round there means the pole set is exhausted.
        if !any && round > spread {
            return Ok((acc, poles_used));
        }
        round += 1;
    }
}

fn line_sum(
    integrand: &Integrand,
    sigma: &Rational,
    h: &Rational,
    goal: &Float,
) -> Result<APComplex> {
    let wp = integrand.prec();
    let hf = Float::with_val(wp, h);
    let tail_goal = goal.clone() / 1024u32;
    let two_pi = APComplex::pi(wp) * 2u32;

    let eval_at = |j: i64| -> APComplex {
        let tau = Float::with_val(wp, j) * &hf;
        integrand.eval(&APComplex::new(Float::with_val(wp, sigma), tau))
    };

    let mut sum = eval_at(0);
    let min_steps = {
        // Cover |tau| >= 8 before trusting the decay.
        let inv = (Rational::from(8) / h.clone()).ceil();
        inv.numer().to_i64().unwrap_or(i64::MAX)
    };
    for dir in [1i64, -1] {
        let mut small_run = 0u32;
        let mut j = dir;
        loop {
            let v = eval_at(j);
            let contribution = v.abs() * &hf;
            sum = &sum + &v;
            if contribution < tail_goal && j.abs() >= min_steps {
                small_run += 1;
                if small_run >= 6 {
                    break;
                }
            } else {
                small_run = 0;
            }
            j += dir;
            if j.abs() > 2_000_000 {
                return Err(EvalError::BudgetExceeded(
                    "line contour: tail did not decay within the step budget".into(),
                ));
            }
        }
    }
    Ok(sum.scale(&(hf.clone() / two_pi)))
}

fn line_integral(
    params: &GParams,
    z: &OmegaPoint,
    budget: &PrecisionBudget,
) -> Result<APComplex> {
    // The line must separate the descending a-family poles (left) from the
    // ascending b-family poles (right).
    let a_max = params.a[..params.n as usize]
        .iter()
        .map(|a| a.clone() - Rational::from(1))
        .max();
    let b_min = params.b[..params.m as usize].iter().cloned().min();
    let sigma = match (a_max, b_min) {
        (Some(am), Some(bm)) => {
            if am >= bm {
                return Err(EvalError::PoleFamiliesNotSeparable);
            }
            (am + bm) / Rational::from(2)
        }
        (Some(am), None) => am + Rational::from(1),
        (None, Some(bm)) => bm - Rational::from(1),
        (None, None) => Rational::new(),
    };
    let wp = budget.work_prec() + 32;
    let integrand = Integrand::new(params, z, wp);
    let goal = budget.eps(-2);
    let mut h = Rational::from((1, 2));
    let mut prev: Option<APComplex> = None;
    for _ in 0..14 {
        let val = line_sum(&integrand, &sigma, &h, &goal)?;
        if let Some(p) = &prev {
            if (&val - p).abs() <= goal {
                return Ok(val);
            }
        }
        prev = Some(val);
        h /= Rational::from(2);
    }
    Err(EvalError::BudgetExceeded(
        "line contour: step refinement did not stabilize".into(),
    ))
}

/// Evaluate the G-function at `z`.
///
/// With `Contour::Auto` the contour is chosen from the convergence report
/// (B-conditions pick the right loop, C-conditions the left loop, otherwise
/// the A-conditions pick the separating line). An explicit contour must be
/// justified by at least one holding condition.
pub fn eval_g(
    params: &GParams,
    z: &OmegaPoint,
    contour: Contour,
    budget: &PrecisionBudget,
) -> Result<GValue> {
    let report = params.classify(z);
    let admissible = report.admissible_contours();
    let chosen = match contour {
        Contour::Auto => *admissible.first().ok_or_else(|| {
            EvalError::NoConvergentContour(format!(
                "no convergence condition holds at z = {}",
                z.value()
            ))
        })?,
        c => {
            let finite_loop = matches!(c, Contour::L1 | Contour::L2)
                && params.loop_pole_set_is_finite(c);
            if admissible.contains(&c) || finite_loop {
                c
            } else {
                return Err(EvalError::NoConvergentContour(format!(
                    "contour {} is not justified by any holding condition \
                     (admissible: {:?})",
                    c, admissible
                )));
            }
        }
    };
    let (value, poles_used) = match chosen {
        Contour::L1 | Contour::L2 => residue_sum(params, z, chosen, budget)?,
        Contour::L0 => (line_integral(params, z, budget)?, 0),
        Contour::Auto => unreachable!(),
    };
    Ok(GValue { value, report, contour: chosen, poles_used })
}
