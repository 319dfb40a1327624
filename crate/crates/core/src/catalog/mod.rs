//! Signal descriptions and their rational transforms.
//!
//! A [`SignalSpec`] is a causal signal written either as a finite sum of
//! exponential-polynomial terms, as a repeated block (discrete only), or as
//! the pointwise product of two specs. The same description feeds the
//! transform builder and the time-domain sampler, so the symbolic and the
//! brute-force routes always start from one source.

mod json;
mod synth;
mod transform;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyrat::Domain;

pub use synth::synthesize;
pub use transform::{coefficients_from_transform, cosine_transform, periodic_transform, transform_of};

/// Whether a signal is indexed by an integer `n` or by real time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeDomain {
    Discrete,
    Continuous,
}

impl TimeDomain {
    pub fn transform_domain(self) -> Domain {
        match self {
            TimeDomain::Discrete => Domain::Z,
            TimeDomain::Continuous => Domain::S,
        }
    }
}

/// `amplitude * n^power * base^n` (discrete) or
/// `amplitude * t^power * exp(base * t)` (continuous, `base` is the rate).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpPolyTerm {
    pub amplitude: Complex<f64>,
    pub base: Complex<f64>,
    pub power: u32,
}

impl ExpPolyTerm {
    pub fn new(amplitude: Complex<f64>, base: Complex<f64>, power: u32) -> Self {
        Self { amplitude, base, power }
    }

    pub fn real(amplitude: f64, base: f64, power: u32) -> Self {
        Self::new(Complex::new(amplitude, 0.0), Complex::new(base, 0.0), power)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SignalBody {
    Terms(Vec<ExpPolyTerm>),
    /// One period, repeated from n = 0.
    Periodic(Vec<f64>),
    Product(Box<SignalSpec>, Box<SignalSpec>),
}

/// A real, causal signal.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalSpec {
    domain: TimeDomain,
    body: SignalBody,
}

const CONJUGATE_TOL: f64 = 1e-9;
const SAME_BASE_TOL: f64 = 1e-12;

impl SignalSpec {
    pub fn new(domain: TimeDomain, body: SignalBody) -> Result<Self> {
        match &body {
            SignalBody::Terms(terms) => check_real(terms)?,
            SignalBody::Periodic(pattern) => {
                if pattern.is_empty() {
                    return Err(Error::EmptyPattern);
                }
                if domain == TimeDomain::Continuous {
                    return Err(Error::InvalidSpec(
                        "periodic patterns describe discrete sequences only".into(),
                    ));
                }
                if pattern.iter().any(|x| !x.is_finite()) {
                    return Err(Error::InvalidSpec("pattern values must be finite".into()));
                }
            }
            SignalBody::Product(a, b) => {
                if a.domain != domain || b.domain != domain {
                    return Err(Error::InvalidSpec(
                        "product factors must share the product's domain".into(),
                    ));
                }
            }
        }
        Ok(Self { domain, body })
    }

    pub fn terms(domain: TimeDomain, terms: Vec<ExpPolyTerm>) -> Result<Self> {
        Self::new(domain, SignalBody::Terms(terms))
    }

    pub fn periodic(pattern: Vec<f64>) -> Result<Self> {
        Self::new(TimeDomain::Discrete, SignalBody::Periodic(pattern))
    }

    pub fn product(a: SignalSpec, b: SignalSpec) -> Result<Self> {
        Self::new(a.domain, SignalBody::Product(Box::new(a), Box::new(b)))
    }

    /// The identically zero signal.
    pub fn zero(domain: TimeDomain) -> Self {
        Self { domain, body: SignalBody::Terms(Vec::new()) }
    }

    /// `u[n]` or `u(t)`.
    pub fn unit_step(domain: TimeDomain) -> Self {
        let base = match domain {
            TimeDomain::Discrete => 1.0,
            TimeDomain::Continuous => 0.0,
        };
        Self::constant(domain, 1.0, base)
    }

    /// `δ[n]`, written as `0^n` with `0^0 = 1`.
    pub fn impulse() -> Self {
        Self::constant(TimeDomain::Discrete, 1.0, 0.0)
    }

    /// `alpha^n u[n]`.
    pub fn geometric(alpha: f64) -> Self {
        Self::constant(TimeDomain::Discrete, 1.0, alpha)
    }

    /// `exp(rate t) u(t)`.
    pub fn exponential(rate: f64) -> Self {
        Self::constant(TimeDomain::Continuous, 1.0, rate)
    }

    fn constant(domain: TimeDomain, amplitude: f64, base: f64) -> Self {
        Self { domain, body: SignalBody::Terms(vec![ExpPolyTerm::real(amplitude, base, 0)]) }
    }

    /// `cos(n w) u[n]`. Collapses to a single real base when `w` is a
    /// multiple of π, so `cos(2πk n)` is the unit step and `cos(π n)` is `(-1)^n`.
    pub fn cosine(w: f64) -> Self {
        let (sin, cos) = w.sin_cos();
        if sin.abs() < SAME_BASE_TOL {
            return Self::geometric(cos.signum());
        }
        let half = Complex::new(0.5, 0.0);
        let base = Complex::new(cos, sin);
        Self {
            domain: TimeDomain::Discrete,
            body: SignalBody::Terms(vec![
                ExpPolyTerm::new(half, base, 0),
                ExpPolyTerm::new(half, base.conj(), 0),
            ]),
        }
    }

    /// `amplitude * cos(w t + phase) u(t)`.
    pub fn cosine_continuous(amplitude: f64, w: f64, phase: f64) -> Self {
        if w == 0.0 {
            return Self::constant(TimeDomain::Continuous, amplitude * phase.cos(), 0.0);
        }
        let a = Complex::from_polar(0.5 * amplitude, phase);
        let rate = Complex::new(0.0, w);
        Self {
            domain: TimeDomain::Continuous,
            body: SignalBody::Terms(vec![
                ExpPolyTerm::new(a, rate, 0),
                ExpPolyTerm::new(a.conj(), rate.conj(), 0),
            ]),
        }
    }

    /// `sin(w t) u(t)`.
    pub fn sine_continuous(w: f64) -> Self {
        Self::cosine_continuous(1.0, w, -std::f64::consts::FRAC_PI_2)
    }

    pub fn domain(&self) -> TimeDomain {
        self.domain
    }

    pub fn body(&self) -> &SignalBody {
        &self.body
    }

    /// Largest `|Im rate|` over all terms (continuous), adding across product
    /// factors. Zero when there is no oscillation.
    pub fn max_angular_frequency(&self) -> f64 {
        match &self.body {
            SignalBody::Terms(terms) => terms.iter().fold(0.0, |m, t| m.max(t.base.im.abs())),
            SignalBody::Periodic(_) => 0.0,
            SignalBody::Product(a, b) => a.max_angular_frequency() + b.max_angular_frequency(),
        }
    }

    /// True when every term of a term-sum spec decays (`|base| < 1` or `Re rate < 0`).
    /// Products decay when either factor decays and the other is bounded.
    pub fn is_decaying(&self) -> bool {
        match &self.body {
            SignalBody::Terms(terms) => terms.iter().all(|t| match self.domain {
                TimeDomain::Discrete => t.base.norm() < 1.0,
                TimeDomain::Continuous => t.base.re < 0.0,
            }),
            SignalBody::Periodic(p) => p.iter().all(|&x| x == 0.0),
            SignalBody::Product(a, b) => {
                (a.is_decaying() && b.is_bounded()) || (b.is_decaying() && a.is_bounded())
            }
        }
    }

    /// True when the signal stays bounded as n or t grows.
    pub fn is_bounded(&self) -> bool {
        match &self.body {
            SignalBody::Terms(terms) => terms.iter().all(|t| {
                let (margin, on_boundary) = match self.domain {
                    TimeDomain::Discrete => (t.base.norm() - 1.0, (t.base.norm() - 1.0).abs() <= 1e-12),
                    TimeDomain::Continuous => (t.base.re, t.base.re.abs() <= 1e-12),
                };
                if on_boundary {
                    t.power == 0
                } else {
                    margin < 0.0
                }
            }),
            SignalBody::Periodic(_) => true,
            SignalBody::Product(a, b) => a.is_bounded() && b.is_bounded(),
        }
    }
}

fn same_point(a: Complex<f64>, b: Complex<f64>) -> bool {
    (a - b).norm() <= SAME_BASE_TOL * 1f64.max(a.norm())
}

/// Sums amplitudes of terms sharing `(power, base)` and checks that the
/// assembled signal is real: real bases carry real amplitudes, complex
/// bases come in conjugate pairs with conjugate amplitudes.
fn check_real(terms: &[ExpPolyTerm]) -> Result<()> {
    let mut groups: Vec<ExpPolyTerm> = Vec::new();
    for t in terms {
        if !(t.amplitude.re.is_finite() && t.amplitude.im.is_finite() && t.base.re.is_finite() && t.base.im.is_finite()) {
            return Err(Error::InvalidSpec("term values must be finite".into()));
        }
        match groups.iter_mut().find(|g| g.power == t.power && same_point(g.base, t.base)) {
            Some(g) => g.amplitude += t.amplitude,
            None => groups.push(*t),
        }
    }
    for g in &groups {
        let tol = CONJUGATE_TOL * 1f64.max(g.amplitude.norm());
        if g.base.im.abs() <= SAME_BASE_TOL * 1f64.max(g.base.norm()) {
            if g.amplitude.im.abs() > tol {
                return Err(Error::InvalidSpec(format!(
                    "term with real base {} has complex amplitude {}; the signal would not be real",
                    g.base.re, g.amplitude
                )));
            }
            continue;
        }
        let partner = groups
            .iter()
            .find(|h| h.power == g.power && same_point(h.base, g.base.conj()));
        let matched = partner.is_some_and(|h| (h.amplitude - g.amplitude.conj()).norm() <= tol);
        if !matched && g.amplitude.norm() > 0.0 {
            return Err(Error::InvalidSpec(format!(
                "term {} * n^{} * ({})^n has no conjugate partner; the signal would not be real",
                g.amplitude, g.power, g.base
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lone_complex_term_is_rejected() {
        let t = ExpPolyTerm::new(Complex::new(0.5, 0.0), Complex::new(0.0, 1.0), 0);
        assert!(matches!(
            SignalSpec::terms(TimeDomain::Discrete, vec![t]),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn conjugate_pair_is_accepted() {
        let base = Complex::new(0.6, 0.8);
        let amp = Complex::new(0.3, -0.1);
        let spec = SignalSpec::terms(
            TimeDomain::Discrete,
            vec![ExpPolyTerm::new(amp, base, 1), ExpPolyTerm::new(amp.conj(), base.conj(), 1)],
        );
        assert!(spec.is_ok());
    }

    #[test]
    fn complex_amplitude_on_real_base_is_rejected() {
        let t = ExpPolyTerm::new(Complex::new(1.0, 1.0), Complex::new(0.5, 0.0), 0);
        assert!(SignalSpec::terms(TimeDomain::Discrete, vec![t]).is_err());
    }

    #[test]
    fn empty_pattern_is_rejected() {
        assert_eq!(SignalSpec::periodic(vec![]).unwrap_err(), Error::EmptyPattern);
    }

    #[test]
    fn continuous_periodic_is_rejected() {
        assert!(SignalSpec::new(TimeDomain::Continuous, SignalBody::Periodic(vec![1.0])).is_err());
    }

    #[test]
    fn product_domains_must_match() {
        let a = SignalSpec::unit_step(TimeDomain::Discrete);
        let b = SignalSpec::unit_step(TimeDomain::Continuous);
        assert!(SignalSpec::product(a, b).is_err());
    }

    #[test]
    fn cosine_at_multiples_of_pi_is_real() {
        assert_eq!(SignalSpec::cosine(std::f64::consts::PI), SignalSpec::geometric(-1.0));
        assert_eq!(SignalSpec::cosine(2.0 * std::f64::consts::PI), SignalSpec::geometric(1.0));
    }

    #[test]
    fn boundedness() {
        assert!(SignalSpec::cosine(1.0).is_bounded());
        assert!(!SignalSpec::geometric(2.0).is_bounded());
        assert!(SignalSpec::geometric(0.9).is_decaying());
        let ramp = SignalSpec::terms(TimeDomain::Discrete, vec![ExpPolyTerm::real(1.0, 1.0, 1)]).unwrap();
        assert!(!ramp.is_bounded());
    }
}
