//! Average of a product sequence from the two factor transforms.
//!
//! `Z{f g}(z) = (1/2πj) ∮ F(w) G(z/w) dw/w` on a circle `|w| = ρ` inside both
//! regions of convergence: `ρ` above every pole of `F` and below `|z|` over
//! every pole of `G`. With `w = ρ e^{iθ}` the integral is the mean of
//! `F(w) G(z/w)` over θ, which the uniform trapezoid rule resolves
//! geometrically fast. The average is `lim_{z->1+} (z-1) Z{f g}(z)`,
//! extrapolated from a short sequence of `z = 1 + δ`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::polyrat::Domain;
use crate::tolerance::Tolerances;
use crate::RationalTransform;

#[derive(Debug, Clone, PartialEq)]
pub struct ContourOptions {
    /// Fixed contour radius; chosen per `z` when absent.
    pub radius: Option<f64>,
    /// Minimum number of trapezoid nodes. More are used when a pole is close to the contour.
    pub points: usize,
    /// Offsets `δ` of the evaluation points `z = 1 + δ`, largest first.
    pub deltas: Vec<f64>,
    /// Largest node count before the contour is declared too close to a pole.
    pub max_points: usize,
}

impl Default for ContourOptions {
    fn default() -> Self {
        Self { radius: None, points: 256, deltas: vec![1e-1, 1e-2, 1e-3], max_points: 1 << 22 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContourStage {
    pub delta: f64,
    pub radius: f64,
    pub points: usize,
    /// `δ * Z{f g}(1 + δ)`.
    pub scaled_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductEstimate {
    pub value: f64,
    pub stages: Vec<ContourStage>,
    /// Extrapolated value using one fewer stage; the gap to `value` measures stability.
    pub previous: f64,
}

const TRAPEZOID_TARGET: f64 = 1e-15;
const STABILITY_TOL: f64 = 1e-2;
/// Extra offsets, each a tenth of the last, tried while successive
/// extrapolations differ by more than this.
const REFINED_TOL: f64 = 1e-6;
const MAX_REFINEMENTS: usize = 3;

/// `<f[n] g[n]>` from `F` and `G`.
pub fn product_average(
    f: &RationalTransform,
    g: &RationalTransform,
    options: &ContourOptions,
    tol: &Tolerances,
) -> Result<ProductEstimate> {
    f.ensure_domain(Domain::Z)?;
    g.ensure_domain(Domain::Z)?;
    for r in [f, g] {
        if !r.is_proper() {
            return Err(Error::ImproperTransform {
                numerator: r.numerator().degree().unwrap_or(0),
                denominator: r.denominator().degree().unwrap_or(0),
            });
        }
    }
    if options.deltas.len() < 2 {
        return Err(Error::PreconditionViolation("need at least two extrapolation points".into()));
    }
    let (f, _) = f.cancel_common_roots(tol)?;
    let (g, _) = g.cancel_common_roots(tol)?;
    let f_radius = spectral_radius(&f, tol)?;
    let g_radius = spectral_radius(&g, tol)?;

    let stage = |delta: f64| -> Result<ContourStage> {
        if !(delta > 0.0) {
            return Err(Error::PreconditionViolation(format!("offset {delta} must be positive")));
        }
        let z = 1.0 + delta;
        let upper = if g_radius > 0.0 { z / g_radius } else { f64::INFINITY };
        let radius = match options.radius {
            Some(rho) => {
                if !(rho > f_radius && rho < upper) {
                    return Err(Error::PoleOnContour(format!(
                        "radius {rho} must lie strictly between {f_radius} and {upper} at z = {z}"
                    )));
                }
                rho
            }
            None => {
                if !(f_radius < upper) {
                    return Err(Error::PoleOnContour(format!(
                        "regions of convergence do not overlap at z = {z} (|poles of F| up to {f_radius}, need below {upper})"
                    )));
                }
                match (f_radius > 0.0, upper.is_finite()) {
                    (true, true) => (f_radius * upper).sqrt(),
                    (true, false) => 2.0 * f_radius,
                    (false, true) => 0.5 * upper,
                    (false, false) => 1.0,
                }
            }
        };
        let ratio = (f_radius / radius).max(if upper.is_finite() { radius / upper } else { 0.0 });
        let needed = if ratio > 0.0 {
            (TRAPEZOID_TARGET.ln() / ratio.ln()).ceil() as usize + 1
        } else {
            1
        };
        let points = options.points.max(needed).max(4);
        if points > options.max_points {
            return Err(Error::PoleOnContour(format!(
                "a pole is too close to the contour at z = {z}: {points} nodes needed"
            )));
        }
        let mean = circle_mean(&f, &g, z, radius, points);
        Ok(ContourStage { delta, radius, points, scaled_value: (mean * delta).re })
    };

    let mut stages = options.deltas.iter().map(|&d| stage(d)).collect::<Result<Vec<_>>>()?;
    let window = options.deltas.len();
    loop {
        let recent = &stages[stages.len() - window..];
        let xs: Vec<f64> = recent.iter().map(|s| s.delta).collect();
        let ys: Vec<f64> = recent.iter().map(|s| s.scaled_value).collect();
        let value = neville_at_zero(&xs, &ys);
        let previous = neville_at_zero(&xs[..window - 1], &ys[..window - 1]);
        let gap = (value - previous).abs() / value.abs().max(1.0);
        if value.is_finite() && gap <= REFINED_TOL {
            return Ok(ProductEstimate { value, stages, previous });
        }
        // a product pole near z = 1 needs offsets below its distance
        let next = if stages.len() - window < MAX_REFINEMENTS {
            stage(stages[stages.len() - 1].delta / 10.0).ok()
        } else {
            None
        };
        match next {
            Some(s) => stages.push(s),
            None if value.is_finite() && gap <= STABILITY_TOL => {
                return Ok(ProductEstimate { value, stages, previous });
            }
            None => return Err(Error::ExtrapolationUnstable { previous, last: value }),
        }
    }
}

fn spectral_radius(r: &RationalTransform, tol: &Tolerances) -> Result<f64> {
    Ok(r.poles(tol)?.iter().fold(0.0, |m, p| m.max(p.location.norm())))
}

fn circle_mean(f: &RationalTransform, g: &RationalTransform, z: f64, radius: f64, points: usize) -> Complex<f64> {
    let z = Complex::new(z, 0.0);
    let step = std::f64::consts::TAU / points as f64;
    let (mut sum, mut carry) = (Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
    for k in 0..points {
        let w = Complex::from_polar(radius, step * k as f64);
        let term = f.eval(w) * g.eval(z / w) - carry;
        let next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    }
    sum / points as f64
}

/// Polynomial extrapolation of `(x_i, y_i)` to `x = 0`.
fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            p[i] = (xi * p[i + 1] - xj * p[i]) / (xi - xj);
        }
    }
    p[0]
}
