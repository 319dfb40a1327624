use num_complex::Complex;

use super::{ExpPolyTerm, SignalBody, SignalSpec, TimeDomain};
use crate::error::{Error, Result};

/// Samples the closed-form signal: index `k` for discrete specs, time
/// `k * dt` for continuous specs (`dt` is ignored for discrete ones).
pub fn synthesize(spec: &SignalSpec, count: usize, dt: f64) -> Result<Vec<f64>> {
    if spec.domain() == TimeDomain::Continuous && !(dt > 0.0) {
        return Err(Error::PreconditionViolation(format!("sampling step must be positive, got {dt}")));
    }
    Ok((0..count).map(|k| spec_value(spec, k, dt)).collect())
}

fn spec_value(spec: &SignalSpec, k: usize, dt: f64) -> f64 {
    match spec.body() {
        SignalBody::Terms(terms) => match spec.domain() {
            TimeDomain::Discrete => terms.iter().map(|t| discrete_term(t, k)).sum(),
            TimeDomain::Continuous => {
                let t = k as f64 * dt;
                terms.iter().map(|term| continuous_term(term, t)).sum()
            }
        },
        SignalBody::Periodic(pattern) => pattern[k % pattern.len()],
        SignalBody::Product(a, b) => spec_value(a, k, dt) * spec_value(b, k, dt),
    }
}

fn discrete_term(t: &ExpPolyTerm, n: usize) -> f64 {
    let poly = (n as f64).powi(t.power as i32);
    if t.power > 0 && n == 0 {
        return 0.0;
    }
    if t.base.im == 0.0 && t.amplitude.im == 0.0 {
        return t.amplitude.re * poly * powi_real(t.base.re, n);
    }
    let geometric = Complex::from_polar(t.base.norm().powf(n as f64), t.base.arg() * n as f64);
    (t.amplitude * geometric).re * poly
}

fn powi_real(base: f64, n: usize) -> f64 {
    match i32::try_from(n) {
        Ok(n) => base.powi(n),
        Err(_) => base.powf(n as f64),
    }
}

fn continuous_term(term: &ExpPolyTerm, t: f64) -> f64 {
    let poly = t.powi(term.power as i32);
    if term.base.im == 0.0 && term.amplitude.im == 0.0 {
        return term.amplitude.re * poly * (term.base.re * t).exp();
    }
    (term.amplitude * (term.base * t).exp()).re * poly
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_sequence() {
        let got = synthesize(&SignalSpec::geometric(-1.0), 4, 0.0).unwrap();
        assert_eq!(got, vec![1.0, -1.0, 1.0, -1.0]);
    }

    #[test]
    fn quarter_period_cosine() {
        let spec = SignalSpec::cosine_continuous(1.0, std::f64::consts::TAU, 0.0);
        let got = synthesize(&spec, 5, 0.25).unwrap();
        for (g, w) in got.iter().zip([1.0, 0.0, -1.0, 0.0, 1.0]) {
            assert!((g - w).abs() < 1e-15, "{got:?}");
        }
    }

    #[test]
    fn geometric_half() {
        assert_eq!(synthesize(&SignalSpec::geometric(0.5), 3, 0.0).unwrap(), vec![1.0, 0.5, 0.25]);
    }

    #[test]
    fn impulse_is_one_then_zero() {
        assert_eq!(synthesize(&SignalSpec::impulse(), 3, 0.0).unwrap(), vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn ramp_starts_at_zero() {
        let ramp = SignalSpec::terms(TimeDomain::Discrete, vec![ExpPolyTerm::real(1.0, 1.0, 1)]).unwrap();
        assert_eq!(synthesize(&ramp, 4, 0.0).unwrap(), vec![0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn product_is_pointwise() {
        let p = SignalSpec::product(SignalSpec::geometric(-1.0), SignalSpec::periodic(vec![1.0, 2.0, 3.0]).unwrap()).unwrap();
        assert_eq!(synthesize(&p, 4, 0.0).unwrap(), vec![1.0, -2.0, 3.0, -1.0]);
    }

    #[test]
    fn continuous_needs_positive_step() {
        assert!(synthesize(&SignalSpec::exponential(-1.0), 3, 0.0).is_err());
    }
}
