use serde::{Deserialize, Serialize};

use super::{cesaro_discrete, RunningAverageTrace};
use crate::catalog::{synthesize, transform_of, SignalBody, SignalSpec, TimeDomain};
use crate::error::{Error, Result};
use crate::polyrat::Domain;
use crate::RationalTransform;

/// Output of the causal system `H(z)` driven by `x`, by its difference equation.
pub fn filter(h: &RationalTransform, x: &[f64]) -> Result<Vec<f64>> {
    h.ensure_domain(Domain::Z)?;
    let a = h.denominator().coeffs();
    let b = h.numerator().coeffs();
    let d = a.len() - 1;
    if b.len() > a.len() {
        return Err(Error::ImproperTransform { numerator: b.len() - 1, denominator: d });
    }
    // coefficients of z^{-i} after dividing through by z^d
    let alpha: Vec<f64> = (0..=d).map(|i| a[d - i].re).collect();
    let beta: Vec<f64> = (0..=d).map(|i| b.get(d - i).map_or(0.0, |c| c.re)).collect();
    let mut y = Vec::with_capacity(x.len());
    for n in 0..x.len() {
        let mut acc = 0.0;
        for (i, &bi) in beta.iter().enumerate().take(n + 1) {
            acc += bi * x[n - i];
        }
        for (i, &ai) in alpha.iter().enumerate().skip(1).take(n) {
            acc -= ai * y[n - i];
        }
        y.push(acc / alpha[0]);
    }
    Ok(y)
}

/// Cesàro trace of `H` applied to `x`.
pub fn filter_and_average(h: &RationalTransform, x: &[f64]) -> Result<RunningAverageTrace> {
    cesaro_discrete(&filter(h, x)?)
}

/// Cesàro trace of `y = h * x` over `horizon` samples.
pub fn convolve_and_average(h_spec: &SignalSpec, x_spec: &SignalSpec, horizon: usize) -> Result<RunningAverageTrace> {
    for spec in [h_spec, x_spec] {
        if spec.domain() != TimeDomain::Discrete {
            return Err(Error::PreconditionViolation("convolution needs discrete signals".into()));
        }
    }
    match h_spec.body() {
        SignalBody::Terms(terms) => {
            if let Some(t) = terms.iter().find(|t| t.base.norm() >= 1.0) {
                return Err(Error::UnstableImpulseResponse(format!(
                    "term with base {}{:+}i does not decay",
                    t.base.re, t.base.im
                )));
            }
        }
        SignalBody::Periodic(p) if p.iter().any(|&v| v != 0.0) => {
            return Err(Error::UnstableImpulseResponse("a nonzero periodic pattern does not decay".into()));
        }
        _ => {}
    }
    let h = transform_of(h_spec)?;
    filter_and_average(&h, &synthesize(x_spec, horizon, 1.0)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    /// Trace of `(1 + x1) x2`.
    pub perturbed: RunningAverageTrace,
    /// Trace of `x2`.
    pub reference: RunningAverageTrace,
    pub difference: f64,
    /// Sum of the two error estimates.
    pub tolerance: f64,
    pub passes: bool,
}

/// Compares the Cesàro means of `(1 + x1[n]) x2[n]` and `x2[n]` for decaying `x1`.
pub fn asymptotic_equivalence_check(x1: &SignalSpec, x2: &SignalSpec, horizon: usize) -> Result<EquivalenceReport> {
    for spec in [x1, x2] {
        if spec.domain() != TimeDomain::Discrete {
            return Err(Error::PreconditionViolation("expected discrete signals".into()));
        }
    }
    if !x1.is_decaying() {
        return Err(Error::PreconditionViolation("the perturbation x1 must decay to zero".into()));
    }
    if !x2.is_bounded() {
        return Err(Error::PreconditionViolation("the reference x2 must be bounded".into()));
    }
    let a = synthesize(x1, horizon, 1.0)?;
    let b = synthesize(x2, horizon, 1.0)?;
    let product: Vec<f64> = a.iter().zip(&b).map(|(p, q)| q + p * q).collect();
    let perturbed = cesaro_discrete(&product)?;
    let reference = cesaro_discrete(&b)?;
    let difference = (perturbed.final_estimate - reference.final_estimate).abs();
    let tolerance = perturbed.error_estimate + reference.error_estimate;
    Ok(EquivalenceReport { passes: difference <= tolerance, perturbed, reference, difference, tolerance })
}
