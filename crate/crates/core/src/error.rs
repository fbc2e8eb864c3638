use rug::Rational;
use thiserror::Error;

/// Errors shared by every evaluation path in the crate.
#[derive(Debug, Error)]
pub enum EvalError {
    /// The argument hits a pole of the function being evaluated.
    #[error("argument {0} lies in the pole set")]
    Pole(Rational),

    /// The argument lies outside the function's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested error bound cannot be certified within the term budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Invalid Meijer G parameters (e.g. colliding pole families).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The requested contour is inconsistent with the convergence report.
    #[error("contour mismatch: {0}")]
    ContourMismatch(String),

    /// No admissible contour makes the integral converge.
    #[error("no convergent contour: {0}")]
    NoConvergentContour(String),

    /// Another singularity lies too close to the residue quadrature circle.
    #[error("quadrature radius too large at s = {0}")]
    RadiusTooLarge(Rational),

    /// The two pole families cannot be separated by a vertical line.
    #[error("pole families not separable by a vertical line")]
    PoleFamiliesNotSeparable,

    /// Working precision is too low for the requested computation.
    #[error("precision too low: {0}")]
    PrecisionTooLow(String),

    /// An exact structural assumption failed (this indicates a bug).
    #[error("assertion failed: {0}")]
    Assertion(String),
}

pub type Result<T> = std::result::Result<T, EvalError>;
