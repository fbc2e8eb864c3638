//! Exact rational coefficient tables, arbitrary-precision evaluation of a
//! family of auxiliary functions by three independent routes (residue series,
//! polylogarithm closed forms, and a general Meijer G evaluator), and a
//! desk-scale scan of a simultaneous-approximation lower bound for linear
//! forms in zeta values.
//!
//! The crate is organized around the rational function
//! `R0(t; nu) = (nu*Delta)!/(nu*d1)! * prod(t - kappa) / prod(t + kappa)`
//! whose cube drives every residue series here:
//!
//! - [`exact`]: exact big-rational arithmetic, binomials, harmonic sums and
//!   `R0` itself.
//! - [`coeffs`]: the partial-fraction tables `alpha*, beta*, gamma*` of
//!   `R0^3`, the polynomial `f1*`, and the finite tail polynomials
//!   `phi*, psi*, xi*`.
//! - [`complex`]: a small arbitrary-precision complex type over MPFR floats.
//! - [`numerics`]: the branch convention on the cut domain `Omega*`,
//!   integer zeta values by Euler-Maclaurin summation, and polylogarithms.
//! - [`gamma`]: the complex Gamma function at arbitrary precision.
//! - [`meijer`]: the general Meijer G evaluator: convergence classification,
//!   pole enumeration with multiplicity, circle-quadrature residues, and
//!   vertical-line quadrature.
//! - [`auxfun`]: the auxiliary functions `f1* .. f6*` with dual (series vs
//!   closed-form) evaluation paths and the z = 1 zeta linear forms.
//! - [`linform`]: the two linear forms in zeta values and the empirical
//!   lower-bound scan.

pub mod auxfun;
pub mod coeffs;
pub mod complex;
pub mod error;
pub mod exact;
pub mod gamma;
pub mod linform;
pub mod meijer;
pub mod numerics;

pub use complex::APComplex;
pub use error::EvalError;
pub use exact::{HarmonicSpec, RParams};
pub use numerics::{OmegaPoint, PrecisionBudget};

/// Re-exported arbitrary-precision scalar types used throughout the API.
pub use rug::{Float, Integer, Rational};
