//! Time averages of signals recovered from their Laplace and z-transforms.
//!
//! For a causal sequence with z-transform `F(z)` the time average is
//! `lim_{z->1} (z-1) F(z)`; for a causal function with Laplace transform
//! `F(s)` it is `lim_{s->0} s F(s)`. Both limits hold whenever the average
//! exists, not only when the signal has a final value. This crate evaluates
//! the limits on rational transforms, decides from pole geometry whether the
//! limit really is an average, and checks every answer against direct
//! time-domain averaging.
//!
//! The algebra is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix it to `f64`, which is what the catalog, quadrature and oracle use.
//!
//! ```
//! use cesaro::averages::{final_value_z, Applicability};
//! use cesaro::catalog::{transform_of, SignalSpec};
//! use cesaro::oracle::cesaro_of_spec;
//! use cesaro::Tolerances;
//!
//! # fn main() -> cesaro::Result<()> {
//! let spec = SignalSpec::cosine(std::f64::consts::FRAC_PI_3);
//! let verdict = final_value_z(&transform_of(&spec)?, &Tolerances::default())?;
//! assert_eq!(verdict.applicability, Applicability::Applicable);
//!
//! let trace = cesaro_of_spec(&spec, 100_000)?;
//! assert!((verdict.value.unwrap() - trace.final_estimate).abs() < 1e-3);
//! # Ok(())
//! # }
//! ```

// `!(x > 0.0)` reads as "reject NaN too" and is used on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod averages;
pub mod catalog;
pub mod corpus;
mod error;
pub mod oracle;
pub mod polyrat;
pub mod report;
mod scalar;
mod tolerance;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use tolerance::Tolerances;

pub use num_complex::Complex;

pub use polyrat::Domain;

pub type Polynomial = polyrat::Poly<f64>;
pub type RationalTransform = polyrat::Rational<f64>;
pub type PoleSet = polyrat::PoleSet<f64>;
pub type Root = polyrat::Root<f64>;
pub type AverageVerdict = averages::Verdict<f64>;
pub type LtiSystem = averages::System<f64>;

pub type PolynomialF32 = polyrat::Poly<f32>;
pub type RationalTransformF32 = polyrat::Rational<f32>;
pub type AverageVerdictF32 = averages::Verdict<f32>;

/// `z = e^{s T}`: maps a continuous rate `s` to the discrete base seen when
/// sampling every `sampling_interval`.
pub fn rate_to_base(rate: Complex<f64>, sampling_interval: f64) -> Complex<f64> {
    (rate * sampling_interval).exp()
}

/// Inverse of [`rate_to_base`] on the principal branch.
pub fn base_to_rate(base: Complex<f64>, sampling_interval: f64) -> Complex<f64> {
    base.ln() / sampling_interval
}
