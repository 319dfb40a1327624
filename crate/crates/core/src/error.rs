use thiserror::Error;

use crate::polyrat::Domain;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("root iteration did not converge within {iterations} iterations (worst residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("denominator is the zero polynomial")]
    ZeroDenominator,

    #[error("expected a {expected} transform, got a {found} transform")]
    WrongDomain { expected: Domain, found: Domain },

    #[error("periodic pattern is empty")]
    EmptyPattern,

    #[error("product signals have no rational closed-form transform")]
    UnsupportedComposition,

    #[error("transform is improper: numerator degree {numerator} exceeds denominator degree {denominator}")]
    ImproperTransform { numerator: usize, denominator: usize },

    #[error("integration path from {start} to infinity meets the pole {re}{im:+}i")]
    PoleOnPath { start: f64, re: f64, im: f64 },

    #[error("quadrature error estimate {estimate:e} exceeds target {target:e}")]
    QuadratureFailure { estimate: f64, target: f64 },

    #[error("system is not stable; poles: {}", format_poles(.poles))]
    UnstableSystem { poles: Vec<(f64, f64)> },

    #[error("transfer function has a pole at z = 1")]
    PoleAtOne,

    #[error("transfer function has a pole at s = 0")]
    PoleAtZero,

    #[error("no admissible contour: {0}")]
    PoleOnContour(String),

    #[error("extrapolation to z -> 1 is unstable (successive estimates {previous} and {last})")]
    ExtrapolationUnstable { previous: f64, last: f64 },

    #[error("sampling step {dt} does not resolve the shortest period {period} (need at least 20 samples per period)")]
    UnderResolved { dt: f64, period: f64 },

    #[error("impulse response is not summable: {0}")]
    UnstableImpulseResponse(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("invalid signal spec: {0}")]
    InvalidSpec(String),
}

fn format_poles(poles: &[(f64, f64)]) -> String {
    poles
        .iter()
        .map(|(re, im)| format!("{re}{im:+}i"))
        .collect::<Vec<_>>()
        .join(", ")
}
