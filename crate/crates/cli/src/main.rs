//! `meijerforms` — command-line front end for the `meijerforms` crate.
//!
//! Five subcommands: `coeffs` (exact partial-fraction tables and
//! polynomials), `eval` (the auxiliary functions `f1* .. f6*` by any of the
//! evaluation routes), `meijer` (the general G evaluator with its
//! convergence classification), `verify` (exact and numeric consistency
//! suites over a `(nu, delta)` grid), and `scan` (the empirical
//! lower-bound scan for the two linear forms in zeta values).
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage, 3 domain,
//! 4 budget, 5 no convergent contour, 6 precision too low.

use clap::{Args, Parser, Subcommand, ValueEnum};
use meijerforms::auxfun::{
    f1_star_meijer, f2_star, f3_star, f4_star, f5_star, f5_vee_star, f6_star, scale_factor,
    zeta_forms_at_one, AuxSpec, EvalPath,
};
use meijerforms::coeffs::{coeff_polys, coeff_table, f1_star_poly, tail_polys, RatPoly};
use meijerforms::exact::{r0_eval, RParams};
use meijerforms::linform::scan as linform_scan;
use meijerforms::meijer::{eval_g, Contour, GParams};
use meijerforms::numerics::omega_normalize;
use meijerforms::{APComplex, EvalError, Float, Integer, PrecisionBudget, Rational};
use serde_json::{json, Value};
use std::process::ExitCode;

// --- top-level argument structure -------------------------------------------

#[derive(Parser)]
#[command(
    name = "meijerforms",
    version,
    about = "Exact coefficient tables, auxiliary-function evaluation, a general \
             Meijer G evaluator, consistency suites, and a zeta linear-form scan"
)]
struct Cli {
    #[command(flatten)]
    config: Config,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Target precision in bits (>= 64)
    #[arg(long, global = true, default_value_t = 256, env = "MF_PRECISION_BITS")]
    precision_bits: u32,

    /// Term budget for series and quadrature loops
    #[arg(long, global = true, default_value_t = 10_000_000, env = "MF_MAX_TERMS")]
    max_terms: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Output::Text, env = "MF_OUTPUT")]
    output: Output,

    /// Seed for randomized verification suites
    #[arg(long, global = true, default_value_t = 0, env = "MF_SEED")]
    seed: u64,
}

impl Config {
    fn budget(&self) -> PrecisionBudget {
        PrecisionBudget::new(self.precision_bits).with_max_terms(self.max_terms)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    F1,
    F2,
    F3,
    F4,
    F5,
    F5Vee,
    F6,
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::F1 => "f1",
            Which::F2 => "f2",
            Which::F3 => "f3",
            Which::F4 => "f4",
            Which::F5 => "f5",
            Which::F5Vee => "f5-vee",
            Which::F6 => "f6",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathArg {
    Series,
    Closed,
    Meijer,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ContourArg {
    Auto,
    L0,
    L1,
    L2,
}

impl ContourArg {
    fn contour(self) -> Contour {
        match self {
            ContourArg::Auto => Contour::Auto,
            ContourArg::L0 => Contour::L0,
            ContourArg::L1 => Contour::L1,
            ContourArg::L2 => Contour::L2,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Suite {
    PartialFractions,
    Identities,
    MeijerCrosscheck,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact partial-fraction tables and derived polynomials
    Coeffs {
        #[arg(long)]
        nu: u32,
        #[arg(long)]
        delta: u32,
    },
    /// Evaluate one of the auxiliary functions at a point
    Eval {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        nu: u32,
        #[arg(long)]
        delta: u32,
        /// Complex point as "re" or "re,im" (decimal or p/q)
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Evaluation route; "both" compares every applicable route
        #[arg(long, value_enum)]
        path: Option<PathArg>,
    },
    /// Evaluate a general Meijer G-function and print its classification
    Meijer {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Upper parameters a_1..a_p, comma separated (decimal or p/q)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<String>,
        /// Lower parameters b_1..b_q, comma separated (decimal or p/q)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b: Vec<String>,
        /// Complex point as "re" or "re,im"
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, value_enum, default_value_t = ContourArg::Auto)]
        contour: ContourArg,
    },
    /// Run consistency suites over a (nu, delta) grid
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// nu range as "a" or "a..b" (inclusive)
        #[arg(long, default_value = "1..2")]
        nu: String,
        /// delta range as "a" or "a..b" (inclusive)
        #[arg(long, default_value = "2..3")]
        delta: String,
    },
    /// Scan the simultaneous-approximation quality measure up to a height
    Scan {
        /// Height bound N: all integer pairs with 0 < |x1| + |x2| <= N
        #[arg(long)]
        max_height: u64,
        /// Exponent on the height weight
        #[arg(long, default_value = "43.464412", allow_hyphen_values = true)]
        gamma: String,
    },
}

// --- error -> exit code ------------------------------------------------------

fn exit_for(e: &EvalError) -> u8 {
    match e {
        EvalError::Pole(_) | EvalError::Domain(_) => 3,
        EvalError::BudgetExceeded(_) | EvalError::RadiusTooLarge(_) => 4,
        EvalError::InvalidParams(_) => 2,
        EvalError::ContourMismatch(_)
        | EvalError::NoConvergentContour(_)
        | EvalError::PoleFamiliesNotSeparable => 5,
        EvalError::PrecisionTooLow(_) => 6,
        EvalError::Assertion(_) => 1,
    }
}

// --- parsing helpers ---------------------------------------------------------

/// Parse "p/q", an integer, or a plain decimal ("-3.25") into an exact
/// rational. Exponents are rejected: the accepted forms are unambiguous and
/// locale independent.
fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Ok(r) = s.parse::<Rational>() {
        return Ok(r);
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1i32, rest),
        None => (1i32, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("cannot parse '{}' as a rational", s));
    }
    let digits = |d: &str| -> Result<Integer, String> {
        if d.is_empty() {
            return Ok(Integer::new());
        }
        d.parse::<Integer>()
            .map_err(|_| format!("cannot parse '{}' as a rational", s))
    };
    let int = digits(int_part)?;
    let frac = digits(frac_part)?;
    let den = Integer::from(10u32).pow(frac_part.len() as u32);
    let num = int * &den + frac;
    Ok(Rational::from((num * Integer::from(sign), den)))
}

use rug::ops::Pow;

/// Parse a complex literal "re" or "re,im" into exact rational parts.
fn parse_complex(s: &str) -> Result<(Rational, Rational), String> {
    match s.split_once(',') {
        Some((re, im)) => Ok((parse_rational(re)?, parse_rational(im)?)),
        None => Ok((parse_rational(s)?, Rational::new())),
    }
}

/// Parse "a" or "a..b" into an inclusive range.
fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<u32>, String> {
    match s.split_once("..") {
        Some((lo, hi)) => {
            let lo: u32 = lo.trim().parse().map_err(|_| format!("bad range '{}'", s))?;
            let hi: u32 = hi.trim().parse().map_err(|_| format!("bad range '{}'", s))?;
            if lo > hi {
                return Err(format!("empty range '{}'", s));
            }
            Ok(lo..=hi)
        }
        None => {
            let v: u32 = s.trim().parse().map_err(|_| format!("bad range '{}'", s))?;
            Ok(v..=v)
        }
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(2)
}

// --- JSON rendering ----------------------------------------------------------

fn rat_json(r: &Rational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

fn rat_display(r: &Rational) -> String {
    r.to_string()
}

fn float_str(f: &Float) -> String {
    f.to_string_radix(10, None)
}

fn complex_json(v: &APComplex) -> Value {
    json!({
        "re": float_str(v.re()),
        "im": float_str(v.im()),
        "prec_bits": v.prec(),
    })
}

fn complex_display(v: &APComplex, digits: usize) -> String {
    let re = v.re().to_string_radix(10, Some(digits));
    if v.im().is_zero() {
        re
    } else {
        format!("{} + {}i", re, v.im().to_string_radix(10, Some(digits)))
    }
}

fn poly_json(p: &RatPoly) -> Value {
    serde_json::to_value(p).expect("polynomial serialization")
}

#[derive(Clone)]
struct Check {
    name: String,
    status: bool,
    detail: String,
}

struct Report {
    command: &'static str,
    params: Value,
    result: Value,
    error_bound: Option<String>,
    checks: Vec<Check>,
}

impl Report {
    fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "params": self.params,
            "result": self.result,
            "error_bound": self.error_bound,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "status": if c.status { "pass" } else { "fail" },
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

// --- subcommand bodies -------------------------------------------------------

fn check_pair(nu: u32, delta: u32) -> Option<ExitCode> {
    if nu < 1 || delta < 2 {
        Some(usage_error("--nu must be >= 1 and --delta must be >= 2"))
    } else {
        None
    }
}

fn run_coeffs(nu: u32, delta: u32, config: &Config) -> Result<ExitCode, EvalError> {
    if let Some(code) = check_pair(nu, delta) {
        return Ok(code);
    }
    let table = coeff_table(nu, delta)?;
    let (alpha_poly, beta_poly, gamma_poly) = coeff_polys(&table);
    let (phi_poly, psi_poly, xi_poly) = tail_polys(&table);
    let f1 = f1_star_poly(nu, delta)?;

    match config.output {
        Output::Json => {
            let report = Report {
                command: "coeffs",
                params: json!({ "nu": nu, "delta": delta }),
                result: json!({
                    "alpha": table.alpha.iter().map(rat_display).collect::<Vec<_>>(),
                    "beta": table.beta.iter().map(rat_display).collect::<Vec<_>>(),
                    "gamma": table.gamma.iter().map(rat_display).collect::<Vec<_>>(),
                    "table": serde_json::to_value(&table).expect("table serialization"),
                    "alpha_poly": poly_json(&alpha_poly),
                    "beta_poly": poly_json(&beta_poly),
                    "gamma_poly": poly_json(&gamma_poly),
                    "phi_poly": poly_json(&phi_poly),
                    "psi_poly": poly_json(&psi_poly),
                    "xi_poly": poly_json(&xi_poly),
                    "f1_poly": poly_json(&f1),
                    "scale_factor": rat_json(&scale_factor(nu, delta)?),
                }),
                error_bound: None,
                checks: vec![],
            };
            println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
        }
        Output::Csv => {
            println!("k,alpha,beta,gamma");
            for k in 0..table.alpha.len() {
                println!(
                    "{},{},{},{}",
                    k, table.alpha[k], table.beta[k], table.gamma[k]
                );
            }
        }
        Output::Text => {
            println!("partial-fraction table for (nu, delta) = ({}, {})", nu, delta);
            for k in 0..table.alpha.len() {
                println!(
                    "  k = {}: alpha = {}, beta = {}, gamma = {}",
                    k, table.alpha[k], table.beta[k], table.gamma[k]
                );
            }
            let show = |name: &str, p: &RatPoly| {
                let c: Vec<String> = p.coeffs().iter().map(|q| q.to_string()).collect();
                println!("  {} (coefficients, ascending): [{}]", name, c.join(", "));
            };
            show("f1*", &f1);
            show("alpha*", &alpha_poly);
            show("beta*", &beta_poly);
            show("gamma*", &gamma_poly);
            show("phi*", &phi_poly);
            show("psi*", &psi_poly);
            show("xi*", &xi_poly);
            println!("  scale factor: {}", scale_factor(nu, delta)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn aux_spec(
    nu: u32,
    delta: u32,
    z: &(Rational, Rational),
    budget: &PrecisionBudget,
) -> Result<AuxSpec, EvalError> {
    let wp = budget.work_prec() + 64;
    let zc = APComplex::new(
        Float::with_val(wp, &z.0),
        Float::with_val(wp, &z.1),
    );
    let p = omega_normalize(&zc)?;
    AuxSpec::new(nu, delta, p, budget.clone())
}

fn eval_one(spec: &AuxSpec, which: Which, path: EvalPath) -> Result<APComplex, EvalError> {
    match which {
        Which::F1 => match path {
            EvalPath::Meijer => f1_star_meijer(spec),
            _ => meijerforms::auxfun::f1_star(spec),
        },
        Which::F2 => f2_star(spec, path),
        Which::F3 => f3_star(spec, path),
        Which::F4 => f4_star(spec, path),
        Which::F5 => f5_star(spec, path),
        Which::F5Vee => f5_vee_star(spec, path),
        Which::F6 => f6_star(spec, path),
    }
}

/// Routes that make sense for each function: f1 has a polynomial form and a
/// finite contour sum; f4 and f6 have no single-G contour representation.
fn paths_for(which: Which) -> &'static [(&'static str, EvalPath)] {
    match which {
        Which::F1 => &[("polynomial", EvalPath::Closed), ("meijer", EvalPath::Meijer)],
        Which::F2 | Which::F3 | Which::F5 | Which::F5Vee => &[
            ("series", EvalPath::Series),
            ("closed", EvalPath::Closed),
            ("meijer", EvalPath::Meijer),
        ],
        Which::F4 | Which::F6 => {
            &[("series", EvalPath::Series), ("closed", EvalPath::Closed)]
        }
    }
}

fn run_eval(
    which: Which,
    nu: u32,
    delta: u32,
    z: &str,
    path: Option<PathArg>,
    config: &Config,
) -> Result<ExitCode, EvalError> {
    if let Some(code) = check_pair(nu, delta) {
        return Ok(code);
    }
    let zq = parse_complex(z).map_err(EvalError::Domain)?;
    let budget = config.budget();
    let spec = aux_spec(nu, delta, &zq, &budget)?;
    let bound = format!("2^-{}", budget.target_bits);

    // f1 at an exact rational point: report the exact value too.
    let exact = if which == Which::F1 && zq.1 == 0 {
        Some(f1_star_poly(nu, delta)?.eval(&zq.0))
    } else {
        None
    };

    let chosen: Vec<(&str, EvalPath)> = match path {
        None => vec![paths_for(which)[if which == Which::F1 { 0 } else { 1 }]],
        Some(PathArg::Series) => vec![("series", EvalPath::Series)],
        Some(PathArg::Closed) => vec![("closed", EvalPath::Closed)],
        Some(PathArg::Meijer) => vec![("meijer", EvalPath::Meijer)],
        Some(PathArg::Both) => paths_for(which).to_vec(),
    };

    let mut values: Vec<(&str, APComplex)> = Vec::new();
    for (name, p) in &chosen {
        values.push((name, eval_one(&spec, which, *p)?));
    }
    let mut max_dev: Option<Float> = None;
    if values.len() > 1 {
        let mut m = Float::with_val(64, 0);
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                let d = values[i].1.dist(&values[j].1);
                if d > m {
                    m = d;
                }
            }
        }
        max_dev = Some(m);
    }

    match config.output {
        Output::Json => {
            let report = Report {
                command: "eval",
                params: json!({
                    "which": which.name(), "nu": nu, "delta": delta,
                    "z": { "re": rat_json(&zq.0), "im": rat_json(&zq.1) },
                }),
                result: json!({
                    "values": values.iter().map(|(n, v)| json!({
                        "path": n, "value": complex_json(v),
                    })).collect::<Vec<_>>(),
                    "exact": exact.as_ref().map(rat_json),
                    "max_deviation": max_dev.as_ref().map(float_str),
                }),
                error_bound: Some(bound),
                checks: vec![],
            };
            println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
        }
        Output::Csv => {
            println!("path,re,im");
            for (n, v) in &values {
                println!("{},{},{}", n, float_str(v.re()), float_str(v.im()));
            }
        }
        Output::Text => {
            let digits = (config.precision_bits as f64 * 0.301) as usize + 2;
            for (n, v) in &values {
                println!("{}*({}) [{}] = {}", which.name(), z, n, complex_display(v, digits));
            }
            if let Some(e) = &exact {
                println!("exact rational value: {}", e);
            }
            if let Some(d) = &max_dev {
                println!("max deviation between paths: {:e}", d.to_f64());
            }
            println!("a-priori error bound: {}", bound);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_meijer(
    m: u32,
    n: u32,
    a: &[String],
    b: &[String],
    z: &str,
    contour: ContourArg,
    config: &Config,
) -> Result<ExitCode, EvalError> {
    let parse_list = |v: &[String]| -> Result<Vec<Rational>, EvalError> {
        v.iter()
            .filter(|s| !s.trim().is_empty())
            .map(|s| parse_rational(s).map_err(EvalError::InvalidParams))
            .collect()
    };
    let a = parse_list(a)?;
    let b = parse_list(b)?;
    let params = GParams::new(m, n, a, b)?;
    let zq = parse_complex(z).map_err(EvalError::Domain)?;
    let budget = config.budget();
    let wp = budget.work_prec() + 64;
    let zc = APComplex::new(Float::with_val(wp, &zq.0), Float::with_val(wp, &zq.1));
    let zp = omega_normalize(&zc)?;

    let gv = eval_g(&params, &zp, contour.contour(), &budget)?;
    let labels: Vec<String> = gv.report.holds.iter().map(|l| l.to_string()).collect();

    match config.output {
        Output::Json => {
            let report = Report {
                command: "meijer",
                params: json!({
                    "m": m, "n": n,
                    "a": params.a().iter().map(rat_json).collect::<Vec<_>>(),
                    "b": params.b().iter().map(rat_json).collect::<Vec<_>>(),
                    "z": { "re": rat_json(&zq.0), "im": rat_json(&zq.1) },
                    "contour_requested": contour.contour().to_string(),
                }),
                result: json!({
                    "value": complex_json(&gv.value),
                    "labels": labels,
                    "delta_star": rat_json(&gv.report.delta_star),
                    "contour_used": gv.contour.to_string(),
                    "poles_used": gv.poles_used,
                }),
                error_bound: Some(format!("2^-{}", budget.target_bits)),
                checks: vec![],
            };
            println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
        }
        Output::Csv => {
            println!("re,im,contour,labels,poles_used");
            println!(
                "{},{},{},{},{}",
                float_str(gv.value.re()),
                float_str(gv.value.im()),
                gv.contour,
                labels.join(";"),
                gv.poles_used
            );
        }
        Output::Text => {
            let digits = (config.precision_bits as f64 * 0.301) as usize + 2;
            println!("convergence conditions holding: {}", labels.join(", "));
            println!("delta* = {}", gv.report.delta_star);
            println!("contour used: {} ({} residues)", gv.contour, gv.poles_used);
            println!("G({}) = {}", z, complex_display(&gv.value, digits));
        }
    }
    Ok(ExitCode::SUCCESS)
}

// --- verify suites -----------------------------------------------------------

fn approx_check(name: &str, a: &APComplex, b: &APComplex, bits: u32) -> Check {
    let d = a.dist(b);
    let pass = d < Float::with_val(64, 1) >> bits;
    Check {
        name: name.to_string(),
        status: pass,
        detail: if pass {
            format!("difference {:e} within 2^-{}", d.to_f64(), bits)
        } else {
            format!(
                "difference {:e} exceeds 2^-{}: {} vs {}",
                d.to_f64(),
                bits,
                complex_display(a, 20),
                complex_display(b, 20)
            )
        },
    }
}

fn suite_partial_fractions(nu: u32, delta: u32, seed: u64, out: &mut Vec<Check>) {
    use rand::{Rng, SeedableRng};
    let tag = format!("partial-fractions/nu={},delta={}", nu, delta);
    let params = match RParams::new(nu, delta) {
        Ok(p) => p,
        Err(e) => {
            out.push(Check { name: tag, status: false, detail: e.to_string() });
            return;
        }
    };
    let table = coeff_table(nu, delta).expect("valid parameters");
    let nd = nu * delta;

    // gamma coefficients sum to zero (degree count of the cube).
    let gsum = table.gamma_sum();
    out.push(Check {
        name: format!("{}/gamma-sum", tag),
        status: gsum == 0,
        detail: format!("sum of gamma_k = {}", gsum),
    });

    // Exact reconstruction of R0^3 from the table at random rational points.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ ((nu as u64) << 32 | delta as u64));
    let mut ok = true;
    let mut detail = String::from("R0(t)^3 equals its partial-fraction expansion");
    for _ in 0..8 {
        let num: i64 = rng.gen_range(-400..400);
        let den: i64 = rng.gen_range(1..40);
        let t = Rational::from((2 * num + 1, 2 * den)); // odd/even: never an integer
        if params.is_pole(&t) {
            continue;
        }
        let direct: Rational = r0_eval(&t, &params).expect("non-pole point").pow(3u32).into();
        let mut sum = Rational::new();
        for k in 0..=nd {
            let dk = t.clone() + Rational::from(k);
            sum += table.alpha[k as usize].clone() / dk.clone().pow(3u32)
                + table.beta[k as usize].clone() / dk.clone().pow(2u32)
                + table.gamma[k as usize].clone() / dk;
        }
        if sum != direct {
            ok = false;
            detail = format!("mismatch at t = {}: {} vs {}", t, sum, direct);
            break;
        }
    }
    out.push(Check { name: format!("{}/reconstruction", tag), status: ok, detail });
}

fn suite_identities(nu: u32, delta: u32, config: &Config, out: &mut Vec<Check>) {
    let tag = format!("identities/nu={},delta={}", nu, delta);
    let bits = config.precision_bits.min(128);
    let budget = PrecisionBudget::new(bits).with_max_terms(config.max_terms);
    let tol = bits - 6;
    let zq = (Rational::from(2), Rational::new());
    let spec = match aux_spec(nu, delta, &zq, &budget) {
        Ok(s) => s,
        Err(e) => {
            out.push(Check { name: tag, status: false, detail: e.to_string() });
            return;
        }
    };

    let pair = |name: &str, f: &dyn Fn(EvalPath) -> Result<APComplex, EvalError>| -> Check {
        match (f(EvalPath::Series), f(EvalPath::Closed)) {
            (Ok(a), Ok(b)) => approx_check(name, &a, &b, tol),
            (Err(e), _) | (_, Err(e)) => {
                Check { name: name.to_string(), status: false, detail: e.to_string() }
            }
        }
    };
    out.push(pair(&format!("{}/f2-series-vs-closed", tag), &|p| f2_star(&spec, p)));
    out.push(pair(&format!("{}/f4-series-vs-closed", tag), &|p| f4_star(&spec, p)));
    out.push(pair(&format!("{}/f6-series-vs-closed", tag), &|p| f6_star(&spec, p)));

    // f5 = f5-vee + i pi f3, each side assembled independently.
    let check = (|| -> Result<Check, EvalError> {
        let lhs = f5_star(&spec, EvalPath::Closed)?;
        let f3 = f3_star(&spec, EvalPath::Series)?;
        let vee = f5_vee_star(&spec, EvalPath::Series)?;
        let ipif3 = APComplex::new(
            -Float::with_val(f3.prec(), f3.im()) * APComplex::pi(f3.prec()),
            Float::with_val(f3.prec(), f3.re()) * APComplex::pi(f3.prec()),
        );
        Ok(approx_check(&format!("{}/f5-branch-identity", tag), &lhs, &(&vee + &ipif3), tol))
    })();
    out.push(check.unwrap_or_else(|e| Check {
        name: format!("{}/f5-branch-identity", tag),
        status: false,
        detail: e.to_string(),
    }));

    // z = 1 degeneration: the series equal the zeta linear forms.
    let zbits = 64u32;
    let zone_budget = PrecisionBudget::new(zbits).with_max_terms(config.max_terms);
    let check = (|| -> Result<(), EvalError> {
        let spec1 = aux_spec(nu, delta, &(Rational::from(1), Rational::new()), &zone_budget)?;
        let forms = zeta_forms_at_one(nu, delta)?;
        for (f, name) in [(0usize, "f2"), (1, "f4"), (2, "f6")] {
            let series = match name {
                "f2" => f2_star(&spec1, EvalPath::Series)?,
                "f4" => f4_star(&spec1, EvalPath::Series)?,
                _ => f6_star(&spec1, EvalPath::Series)?,
            };
            let form = APComplex::from_float(forms[f].eval(&zone_budget)?);
            out.push(approx_check(
                &format!("{}/zeta-form-{}-at-1", tag, name),
                &series,
                &form,
                zbits - 4,
            ));
        }
        Ok(())
    })();
    if let Err(e) = check {
        out.push(Check {
            name: format!("{}/zeta-forms-at-1", tag),
            status: false,
            detail: e.to_string(),
        });
    }
}

fn suite_meijer_crosscheck(nu: u32, delta: u32, config: &Config, out: &mut Vec<Check>) {
    let tag = format!("meijer-crosscheck/nu={},delta={}", nu, delta);
    let bits = config.precision_bits.min(96);
    let budget = PrecisionBudget::new(bits).with_max_terms(config.max_terms);
    let tol = bits - 6;
    let spec = match aux_spec(nu, delta, &(Rational::from(2), Rational::new()), &budget) {
        Ok(s) => s,
        Err(e) => {
            out.push(Check { name: tag, status: false, detail: e.to_string() });
            return;
        }
    };
    let run = |name: String, r: Result<(APComplex, APComplex), EvalError>| -> Check {
        match r {
            Ok((a, b)) => approx_check(&name, &a, &b, tol),
            Err(e) => Check { name, status: false, detail: e.to_string() },
        }
    };
    out.push(run(
        format!("{}/f1-polynomial-vs-contour", tag),
        meijerforms::auxfun::f1_star(&spec).and_then(|a| Ok((a, f1_star_meijer(&spec)?))),
    ));
    out.push(run(
        format!("{}/f2-series-vs-contour", tag),
        f2_star(&spec, EvalPath::Series).and_then(|a| Ok((a, f2_star(&spec, EvalPath::Meijer)?))),
    ));
}

fn run_verify(
    suite: Suite,
    nu_range: &str,
    delta_range: &str,
    config: &Config,
) -> Result<ExitCode, String> {
    let nus = parse_range(nu_range)?;
    let deltas = parse_range(delta_range)?;
    let mut checks: Vec<Check> = Vec::new();

    for nu in nus.clone() {
        for delta in deltas.clone() {
            if matches!(suite, Suite::PartialFractions | Suite::All) {
                suite_partial_fractions(nu, delta, config.seed, &mut checks);
            }
            if matches!(suite, Suite::Identities | Suite::All) {
                suite_identities(nu, delta, config, &mut checks);
            }
            if matches!(suite, Suite::MeijerCrosscheck | Suite::All) {
                suite_meijer_crosscheck(nu, delta, config, &mut checks);
            }
        }
    }
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let all_pass = checks.iter().all(|c| c.status);

    match config.output {
        Output::Json => {
            let report = Report {
                command: "verify",
                params: json!({
                    "suite": format!("{:?}", suite),
                    "nu": nu_range, "delta": delta_range, "seed": config.seed,
                }),
                result: json!({ "pass": all_pass }),
                error_bound: None,
                checks,
            };
            println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
        }
        Output::Csv => {
            println!("name,status,detail");
            for c in &checks {
                println!(
                    "{},{},\"{}\"",
                    c.name,
                    if c.status { "pass" } else { "fail" },
                    c.detail.replace('"', "'")
                );
            }
        }
        Output::Text => {
            for c in &checks {
                println!("{} {}: {}", if c.status { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            println!("{}", if all_pass { "all checks passed" } else { "FAILURES present" });
        }
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_scan(max_height: u64, gamma: &str, config: &Config) -> Result<ExitCode, EvalError> {
    if max_height == 0 {
        return Err(EvalError::InvalidParams("--max-height must be >= 1".into()));
    }
    let budget = config.budget();
    let wp = budget.work_prec() + 32;
    let g = Float::with_val(
        wp,
        Float::parse(gamma).map_err(|_| EvalError::InvalidParams(format!("bad gamma '{}'", gamma)))?,
    );
    let result = linform_scan(max_height, &g, &budget)?;

    match config.output {
        Output::Json => {
            let report = Report {
                command: "scan",
                params: json!({
                    "max_height": max_height,
                    "gamma": gamma,
                    "precision_bits": config.precision_bits,
                }),
                result: json!({
                    "min_value": float_str(&result.min_value),
                    "argmin": { "x1": result.argmin.0, "x2": result.argmin.1 },
                    "min_distance": float_str(&result.min_distance),
                    "precision_bits": result.precision_bits,
                }),
                error_bound: None,
                checks: vec![],
            };
            println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
        }
        Output::Csv => {
            println!("n,gamma,min_value,x1,x2,precision_bits");
            println!(
                "{},{},{},{},{},{}",
                result.n,
                gamma,
                float_str(&result.min_value),
                result.argmin.0,
                result.argmin.1,
                result.precision_bits
            );
        }
        Output::Text => {
            println!(
                "min over 0 < |x1|+|x2| <= {} of (||phi1|| + ||phi2||)(|x1|+|x2|)^{}:",
                max_height, gamma
            );
            println!("  min_c  = {:e}", result.min_value.to_f64());
            println!("  argmin = (x1, x2) = ({}, {})", result.argmin.0, result.argmin.1);
            println!("  smallest fractional distance seen: {:e}", result.min_distance.to_f64());
            println!("  working precision: {} bits", result.precision_bits);
            if let Ok((r1, r2)) = reference_ratios(&budget) {
                println!("reference ratios:");
                println!("  zeta(3)/zeta(4)                          = {}", r1.to_string_radix(10, Some(30)));
                println!("  (12 zeta(3) zeta(5) - 9 zeta(4)^2)/zeta(4) = {}", r2.to_string_radix(10, Some(30)));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// --- reference values printed alongside the scan -----------------------------

/// The two ratios whose irrationality the linear forms certify; printed by
/// `scan` in text mode purely for reference.
fn reference_ratios(budget: &PrecisionBudget) -> Result<(Float, Float), EvalError> {
    use meijerforms::numerics::zeta_int;
    let z3 = zeta_int(3, budget)?;
    let z4 = zeta_int(4, budget)?;
    let z5 = zeta_int(5, budget)?;
    let wp = budget.work_prec();
    let first = Float::with_val(wp, &z3 / &z4);
    let second = Float::with_val(
        wp,
        (Float::with_val(wp, 12) * &z3 * &z5 - Float::with_val(wp, 9) * z4.clone().square()) / &z4,
    );
    Ok((first, second))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.config.precision_bits < 64 {
        return usage_error("--precision-bits must be at least 64");
    }

    let outcome: Result<ExitCode, EvalError> = match &cli.command {
        Command::Coeffs { nu, delta } => run_coeffs(*nu, *delta, &cli.config),
        Command::Eval { which, nu, delta, z, path } => {
            run_eval(*which, *nu, *delta, z, *path, &cli.config)
        }
        Command::Meijer { m, n, a, b, z, contour } => {
            run_meijer(*m, *n, a, b, z, *contour, &cli.config)
        }
        Command::Verify { suite, nu, delta } => {
            return match run_verify(*suite, nu, delta, &cli.config) {
                Ok(code) => code,
                Err(msg) => usage_error(&msg),
            };
        }
        Command::Scan { max_height, gamma } => run_scan(*max_height, gamma, &cli.config),
    };

    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            if matches!(e, EvalError::PrecisionTooLow(_)) {
                eprintln!("hint: re-run with a larger --precision-bits (or MF_PRECISION_BITS)");
            }
            ExitCode::from(exit_for(&e))
        }
    }
}
