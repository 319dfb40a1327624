//! Transforms of running averages, by quadrature along the real axis.
//!
//! Discrete: for `g[n] = (1/(n+1)) sum_{k<=n} x[k]`, `(n+1) g[n]` is the
//! running sum, whose transform is `z X(z)/(z-1)`. Solving `G - z G' = zX/(z-1)`
//! with `G(z)/z -> 0` at infinity gives
//!
//! `G(z) = z * int_z^inf X(w) / (w (w-1)) dw`.
//!
//! Near `w = 1` the integrand behaves like `X(w)/(w-1)^2`, so
//! `(z-1) G(z) -> lim (z-1) X(z)` exactly as for the unnormalised kernel
//! `X(w)/(w-1)`; the extra `1/w` only makes the tail integrable when `x[0] != 0`.
//!
//! Continuous: `<f>_t = (1/t) int_0^t f` has transform `int_s^inf F(w)/w dw`.

use num_complex::Complex;

use super::quadrature::integrate;
use crate::error::{Error, Result};
use crate::polyrat::Domain;
use crate::tolerance::Tolerances;
use crate::RationalTransform;

/// Error target per evaluation, absolute for values up to one and relative beyond.
pub const RUNNING_AVERAGE_TARGET: f64 = 1e-8;
const MAX_INTERVALS: usize = 4000;

/// Transform `G(z)` of the discrete running average of the sequence with transform `X`.
pub fn running_average_transform_z(x: &RationalTransform, z: f64, tol: &Tolerances) -> Result<Complex<f64>> {
    x.ensure_domain(Domain::Z)?;
    if !(z > 1.0 + tol.unit_circle) {
        return Err(Error::PreconditionViolation(format!("evaluation point z = {z} must exceed 1")));
    }
    if x.is_zero() {
        return Ok(Complex::new(0.0, 0.0));
    }
    require_proper(x, false)?;
    let (x, _) = x.cancel_common_roots(tol)?;
    for p in x.poles(tol)?.iter() {
        if p.location.norm() >= z {
            return Err(Error::PoleOnPath { start: z, re: p.location.re, im: p.location.im });
        }
    }
    let one = Complex::new(1.0, 0.0);
    let kernel = |w: Complex<f64>| x.eval(w) / (w * (w - one));
    Ok(Complex::new(z, 0.0) * semi_infinite(kernel, z, z - 1.0)?)
}

/// Transform of the continuous running average `<f>_t`, evaluated at real `s > 0`.
pub fn running_average_transform_s(f: &RationalTransform, s: f64, tol: &Tolerances) -> Result<Complex<f64>> {
    f.ensure_domain(Domain::S)?;
    if !(s > tol.imaginary_axis) {
        return Err(Error::PreconditionViolation(format!("evaluation point s = {s} must be positive")));
    }
    if f.is_zero() {
        return Ok(Complex::new(0.0, 0.0));
    }
    require_proper(f, true)?;
    let (f, _) = f.cancel_common_roots(tol)?;
    for p in f.poles(tol)?.iter() {
        if p.location.re >= s {
            return Err(Error::PoleOnPath { start: s, re: p.location.re, im: p.location.im });
        }
    }
    let kernel = |w: Complex<f64>| f.eval(w) / w;
    semi_infinite(kernel, s, s)
}

fn require_proper(r: &RationalTransform, strict: bool) -> Result<()> {
    let ok = if strict { r.is_strictly_proper() } else { r.is_proper() };
    if ok {
        Ok(())
    } else {
        Err(Error::ImproperTransform {
            numerator: r.numerator().degree().unwrap_or(0),
            denominator: r.denominator().degree().unwrap_or(0),
        })
    }
}

/// `int_start^inf kernel(w) dw` with `w = start + scale * u/(1-u)`, `u in [0, 1)`.
/// `scale` is the distance from `start` to the limit point, which is where
/// the integrand's features live.
fn semi_infinite<K: Fn(Complex<f64>) -> Complex<f64>>(kernel: K, start: f64, scale: f64) -> Result<Complex<f64>> {
    let mapped = |u: f64| {
        let v = 1.0 - u;
        let w = start + scale * u / v;
        kernel(Complex::new(w, 0.0)) * (scale / (v * v))
    };
    let r = integrate(mapped, 0.0, 1.0, RUNNING_AVERAGE_TARGET, RUNNING_AVERAGE_TARGET, MAX_INTERVALS);
    let floor = 50.0 * f64::EPSILON * r.magnitude;
    let target = RUNNING_AVERAGE_TARGET * r.value.norm().max(1.0);
    if !(r.error <= target.max(floor)) {
        return Err(Error::QuadratureFailure { estimate: r.error, target });
    }
    Ok(r.value)
}
