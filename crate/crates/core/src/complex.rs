//! Arbitrary-precision complex arithmetic over MPFR floats.
//!
//! Rectangular form, round-to-nearest throughout. Results carry the maximum
//! precision of their operands; error accounting is by a-priori bounds in the
//! callers, not interval arithmetic.

use rug::float::Constant;
use rug::ops::{CompleteRound, Pow};
use rug::{Float, Rational};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Complex number with explicit binary precision.
#[derive(Debug, Clone, PartialEq)]
pub struct APComplex {
    re: Float,
    im: Float,
}

impl APComplex {
    pub fn new(re: Float, im: Float) -> Self {
        APComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        APComplex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        APComplex { re: Float::with_val(prec, 1), im: Float::new(prec) }
    }

    pub fn i(prec: u32) -> Self {
        APComplex { re: Float::new(prec), im: Float::with_val(prec, 1) }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        APComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_float(re: Float) -> Self {
        let prec = re.prec();
        APComplex { re, im: Float::new(prec) }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        APComplex { re: Float::with_val(prec, q), im: Float::new(prec) }
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn into_parts(self) -> (Float, Float) {
        (self.re, self.im)
    }

    /// Working precision: the maximum of the two parts.
    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Same value re-rounded to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        APComplex {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        APComplex { re: self.re.clone(), im: (-&self.im).complete(self.im.prec()) }
    }

    pub fn norm_sqr(&self) -> Float {
        let prec = self.prec();
        (&self.re * &self.re).complete(prec) + (&self.im * &self.im).complete(prec)
    }

    /// `|z|` (hypot, no intermediate overflow).
    pub fn abs(&self) -> Float {
        let prec = self.prec();
        Float::with_val(prec, self.re.hypot_ref(&self.im))
    }

    /// Principal argument in `(-pi, pi]`, via `atan2(im, re)`.
    pub fn arg(&self) -> Float {
        let prec = self.prec();
        Float::with_val(prec, self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, f: &Float) -> Self {
        let prec = self.prec().max(f.prec());
        APComplex {
            re: (&self.re * f).complete(prec),
            im: (&self.im * f).complete(prec),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        let prec = self.prec();
        let f = Float::with_val(prec, q);
        self.scale(&f)
    }

    pub fn recip(&self) -> Self {
        let prec = self.prec();
        let d = self.norm_sqr();
        APComplex {
            re: (&self.re / &d).complete(prec),
            im: -(&self.im / &d).complete(prec),
        }
    }

    /// `e^z = e^re (cos im + i sin im)`.
    pub fn exp(&self) -> Self {
        let prec = self.prec();
        let mag = Float::with_val(prec, self.re.exp_ref());
        let (s, c) = Float::with_val(prec, &self.im).sin_cos(Float::new(prec));
        APComplex { re: (&mag * &c).complete(prec), im: (&mag * &s).complete(prec) }
    }

    /// Principal logarithm `ln|z| + i arg(z)`.
    pub fn ln(&self) -> Self {
        let prec = self.prec();
        APComplex { re: Float::with_val(prec, self.abs().ln_ref()), im: self.arg() }
    }

    /// `sin z = sin re cosh im + i cos re sinh im`.
    pub fn sin(&self) -> Self {
        let prec = self.prec();
        let (s, c) = Float::with_val(prec, &self.re).sin_cos(Float::new(prec));
        let (sh, ch) = Float::with_val(prec, &self.im).sinh_cosh(Float::new(prec));
        APComplex { re: s * ch, im: c * sh }
    }

    /// Integer power by binary exponentiation.
    pub fn powi(&self, n: i64) -> Self {
        let prec = self.prec();
        if n == 0 {
            return APComplex::one(prec);
        }
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = APComplex::one(prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `pi` at the given precision (convenience for branch bookkeeping).
    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, Constant::Pi)
    }

    /// Absolute distance `|self - other|`.
    pub fn dist(&self, other: &APComplex) -> Float {
        (self - other).abs()
    }

    /// True when `|self - other| <= 2^(-bits)`.
    pub fn approx_eq(&self, other: &APComplex, bits: i64) -> bool {
        let prec = self.prec().max(other.prec());
        let tol = Float::with_val(prec, 2).pow(-Float::with_val(prec, bits as f64));
        self.dist(other) <= tol
    }
}

impl fmt::Display for APComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_sign_negative() {
            write!(f, "{} - {}i", self.re, (-&self.im).complete(self.im.prec()))
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

impl Add for &APComplex {
    type Output = APComplex;
    fn add(self, rhs: &APComplex) -> APComplex {
        let prec = self.prec().max(rhs.prec());
        APComplex {
            re: (&self.re + &rhs.re).complete(prec),
            im: (&self.im + &rhs.im).complete(prec),
        }
    }
}

impl Sub for &APComplex {
    type Output = APComplex;
    fn sub(self, rhs: &APComplex) -> APComplex {
        let prec = self.prec().max(rhs.prec());
        APComplex {
            re: (&self.re - &rhs.re).complete(prec),
            im: (&self.im - &rhs.im).complete(prec),
        }
    }
}

impl Mul for &APComplex {
    type Output = APComplex;
    fn mul(self, rhs: &APComplex) -> APComplex {
        let prec = self.prec().max(rhs.prec());
        let re = (&self.re * &rhs.re).complete(prec) - (&self.im * &rhs.im).complete(prec);
        let im = (&self.re * &rhs.im).complete(prec) + (&self.im * &rhs.re).complete(prec);
        APComplex { re, im }
    }
}

impl Div for &APComplex {
    type Output = APComplex;
    fn div(self, rhs: &APComplex) -> APComplex {
        let prec = self.prec().max(rhs.prec());
        let d = rhs.norm_sqr();
        let re = ((&self.re * &rhs.re).complete(prec) + (&self.im * &rhs.im).complete(prec)) / &d;
        let im = ((&self.im * &rhs.re).complete(prec) - (&self.re * &rhs.im).complete(prec)) / &d;
        APComplex { re, im }
    }
}

impl Neg for &APComplex {
    type Output = APComplex;
    fn neg(self) -> APComplex {
        let prec = self.prec();
        APComplex { re: (-&self.re).complete(prec), im: (-&self.im).complete(prec) }
    }
}
