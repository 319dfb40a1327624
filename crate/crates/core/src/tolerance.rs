use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Numerical tolerances shared by the root finder, the deflation step and
/// the pole classifier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative residual accepted for a root: `|p(r)| <= root_residual * sum |a_k| |r|^k`.
    pub root_residual: f64,
    /// Roots closer than this (scaled by `max(1, |r|)`) are one root of higher multiplicity.
    pub cluster: f64,
    /// A polynomial "vanishes" at a point when `|p(x)| <= vanish * sum |a_k| |x|^k`.
    pub vanish: f64,
    /// Band around the unit circle inside which a z-domain pole counts as a boundary pole.
    pub unit_circle: f64,
    /// Band around the imaginary axis inside which an s-domain pole counts as a boundary pole.
    pub imaginary_axis: f64,
    /// Aberth iteration budget before the companion-matrix fallback.
    pub max_iterations: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            root_residual: 1e-10,
            cluster: 1e-7,
            vanish: 1e-10,
            unit_circle: 1e-7,
            imaginary_axis: 1e-9,
            max_iterations: 200,
        }
    }
}

impl Tolerances {
    /// Defaults scaled to the precision of `T`. For `f64` this is [`Tolerances::default`].
    pub fn for_scalar<T: Scalar>() -> Self {
        let eps = T::epsilon().as_f64();
        if eps <= f64::EPSILON {
            return Self::default();
        }
        // Single precision: a double root splits by about sqrt(eps).
        Self {
            root_residual: 1e3 * eps,
            cluster: 30.0 * eps.sqrt(),
            vanish: 1e3 * eps,
            unit_circle: 30.0 * eps.sqrt(),
            imaginary_axis: 1e3 * eps,
            max_iterations: 200,
        }
    }
}
