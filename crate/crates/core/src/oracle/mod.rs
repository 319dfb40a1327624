//! Direct time-domain averaging, the ground truth every transform-side
//! answer is checked against.
//!
//! Running means are read at dyadic checkpoints `N, N/2, N/4, ...`. The gap
//! between the last checkpoints is the error estimate; a mean that keeps
//! growing across checkpoints is reported as not converged.

mod convolve;
mod sum;

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::catalog::{synthesize, SignalSpec, TimeDomain};
use crate::error::{Error, Result};

pub use convolve::{asymptotic_equivalence_check, convolve_and_average, filter, filter_and_average, EquivalenceReport};
pub use sum::CompensatedSum;

/// A trace counts as converged when its error estimate is below this,
/// relative to `max(1, |estimate|)`.
pub const CONVERGENCE_TOL: f64 = 1e-2;

/// Checkpoint means growing by more than this factor at each of the last
/// three transitions mark divergence.
const GROWTH_FACTOR: f64 = 1.1;

/// Samples per shortest period required of a continuous trace.
pub const SAMPLES_PER_PERIOD: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Horizon {
    Samples(u64),
    Time(f64),
}

/// One checkpoint: sample index `n` (mean of `x[0..=n]`) or time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub at: f64,
    pub running_average: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunningAverageTrace {
    pub samples: Vec<TracePoint>,
    pub final_estimate: f64,
    pub error_estimate: f64,
    pub converged: bool,
    pub horizon: Horizon,
}

impl RunningAverageTrace {
    /// Writes `n,running_average` rows, one per checkpoint. Continuous traces
    /// put the time in the first column.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "n,running_average")?;
        for p in &self.samples {
            writeln!(out, "{},{}", p.at, p.running_average)?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV is ASCII")
    }
}

/// Counts `N >> j` down to 1, in increasing order.
fn dyadic_counts(n: usize) -> Vec<usize> {
    let mut counts: Vec<usize> = std::iter::successors(Some(n), |&c| (c > 1).then_some(c / 2)).collect();
    counts.reverse();
    counts
}

fn is_growing(means: &[f64]) -> bool {
    if means.len() < 4 {
        return false;
    }
    means[means.len() - 4..]
        .windows(2)
        .all(|w| w[1].abs() > GROWTH_FACTOR * w[0].abs())
}

fn verdict(means: &[f64], error: f64) -> bool {
    let last = *means.last().expect("at least one checkpoint");
    last.is_finite() && error.is_finite() && !is_growing(means) && error <= CONVERGENCE_TOL * last.abs().max(1.0)
}

/// Cesàro means `g[n] = (1/(n+1)) sum_{k<=n} x[k]` at dyadic checkpoints.
pub fn cesaro_discrete(samples: &[f64]) -> Result<RunningAverageTrace> {
    if samples.is_empty() {
        return Err(Error::PreconditionViolation("no samples to average".into()));
    }
    let n = samples.len();
    let counts = dyadic_counts(n);
    let mut points = Vec::with_capacity(counts.len());
    let mut sum = CompensatedSum::new();
    let mut largest: f64 = 0.0;
    let mut next = counts.iter().copied().peekable();
    for (k, &x) in samples.iter().enumerate() {
        sum.add(x);
        largest = largest.max(x.abs());
        if next.peek() == Some(&(k + 1)) {
            next.next();
            points.push(TracePoint { at: k as f64, running_average: sum.value() / (k + 1) as f64 });
        }
    }
    let means: Vec<f64> = points.iter().map(|p| p.running_average).collect();
    let last = means[means.len() - 1];
    let error = checkpoint_gap(&means) + noise_floor(largest);
    Ok(RunningAverageTrace {
        converged: verdict(&means, error),
        samples: points,
        final_estimate: last,
        error_estimate: error,
        horizon: Horizon::Samples(n as u64),
    })
}

/// `|m(N) - m(N/2)|`, or half the previous gap when that is larger: a
/// periodic partial sum can make `m(N) = m(N/2)` by coincidence, but not
/// two gaps in a row. A single checkpoint is compared against zero.
fn checkpoint_gap(means: &[f64]) -> f64 {
    let k = means.len();
    let gap = |i: usize| (means[i] - if i > 0 { means[i - 1] } else { 0.0 }).abs();
    let last = gap(k - 1);
    if k >= 3 {
        last.max(0.5 * gap(k - 2))
    } else {
        last
    }
}

/// Rounding left after compensated summation and the final division.
fn noise_floor(largest: f64) -> f64 {
    16.0 * f64::EPSILON * largest
}

/// Samples a discrete spec for `horizon` steps and averages it.
pub fn cesaro_of_spec(spec: &SignalSpec, horizon: usize) -> Result<RunningAverageTrace> {
    if spec.domain() != TimeDomain::Discrete {
        return Err(Error::PreconditionViolation("expected a discrete signal".into()));
    }
    cesaro_discrete(&synthesize(spec, horizon, 1.0)?)
}

/// Running time average `(1/t) int_0^t f` by the composite trapezoid rule on
/// the grid `k * dt`, read at `t_max / 2^j`. The error estimate adds the
/// checkpoint gap and the change from halving `dt`.
pub fn cesaro_continuous(spec: &SignalSpec, t_max: f64, dt: f64) -> Result<RunningAverageTrace> {
    if spec.domain() != TimeDomain::Continuous {
        return Err(Error::PreconditionViolation("expected a continuous signal".into()));
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::PreconditionViolation(format!("time step must be positive, got {dt}")));
    }
    if !(t_max >= 100.0 * dt) || !t_max.is_finite() {
        return Err(Error::PreconditionViolation(format!(
            "horizon {t_max} must span at least 100 steps of {dt}"
        )));
    }
    let w = spec.max_angular_frequency();
    if w > 0.0 {
        let period = std::f64::consts::TAU / w;
        if dt > period / SAMPLES_PER_PERIOD {
            return Err(Error::UnderResolved { dt, period });
        }
    }

    let steps = (t_max / dt).round() as usize;
    let (points, largest) = trapezoid_trace(spec, steps, dt)?;
    let (fine, _) = trapezoid_trace(spec, 2 * steps, 0.5 * dt)?;
    let means: Vec<f64> = points.iter().map(|p| p.running_average).collect();
    let last = means[means.len() - 1];
    let discretization = (last - fine[fine.len() - 1].running_average).abs();
    let error = checkpoint_gap(&means) + discretization + noise_floor(largest);
    Ok(RunningAverageTrace {
        converged: verdict(&means, error),
        samples: points,
        final_estimate: last,
        error_estimate: error,
        horizon: Horizon::Time(steps as f64 * dt),
    })
}

fn trapezoid_trace(spec: &SignalSpec, steps: usize, dt: f64) -> Result<(Vec<TracePoint>, f64)> {
    let values = synthesize(spec, steps + 1, dt)?;
    let counts = dyadic_counts(steps);
    let mut next = counts.iter().copied().peekable();
    let mut points = Vec::with_capacity(counts.len());
    let mut integral = CompensatedSum::new();
    let mut largest = values[0].abs();
    for k in 1..=steps {
        integral.add(0.5 * dt * (values[k - 1] + values[k]));
        largest = largest.max(values[k].abs());
        if next.peek() == Some(&k) {
            next.next();
            let t = k as f64 * dt;
            points.push(TracePoint { at: t, running_average: integral.value() / t });
        }
    }
    Ok((points, largest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::ExpPolyTerm;

    #[test]
    fn alternating_signs_average_to_zero() {
        let x: Vec<f64> = (0..10_000).map(|n| if n % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let t = cesaro_discrete(&x).unwrap();
        assert!(t.final_estimate.abs() < 1e-3);
        assert!(t.converged);
    }

    #[test]
    fn constant_has_no_checkpoint_gap() {
        for n in [1, 2, 7, 1000] {
            let t = cesaro_discrete(&vec![3.0; n]).unwrap();
            assert_eq!(t.final_estimate, 3.0);
            assert!(t.samples.iter().all(|p| p.running_average == 3.0));
            if n > 1 {
                assert!(t.error_estimate <= 16.0 * f64::EPSILON * 3.0);
                assert!(t.converged);
            }
        }
    }

    #[test]
    fn doubling_sequence_never_converges() {
        let x: Vec<f64> = (0..60).map(|n| 2f64.powi(n)).collect();
        let t = cesaro_discrete(&x).unwrap();
        assert!(!t.converged);
        let means: Vec<f64> = t.samples.iter().map(|p| p.running_average).collect();
        assert!(means.windows(2).all(|w| w[1] > w[0]));
        // overflowing to infinity is not convergence either
        let t = cesaro_of_spec(&SignalSpec::geometric(2.0), 100_000).unwrap();
        assert!(!t.converged);
    }

    #[test]
    fn checkpoints_are_dyadic_and_increasing() {
        let t = cesaro_discrete(&vec![1.0; 1000]).unwrap();
        let at: Vec<f64> = t.samples.iter().map(|p| p.at).collect();
        assert_eq!(at.last(), Some(&999.0));
        assert_eq!(at[at.len() - 2], 499.0);
        assert!(at.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(t.horizon, Horizon::Samples(1000));
    }

    #[test]
    fn empty_input_is_rejected() {
        assert!(cesaro_discrete(&[]).is_err());
    }

    #[test]
    fn continuous_cosine() {
        let t = cesaro_continuous(&SignalSpec::cosine_continuous(1.0, 1.0, 0.0), 1000.0, 0.05).unwrap();
        assert!(t.final_estimate.abs() < 2e-3, "{}", t.final_estimate);
        assert!(t.converged);
    }

    #[test]
    fn continuous_step_is_exact() {
        let t = cesaro_continuous(&SignalSpec::unit_step(TimeDomain::Continuous), 1000.0, 0.1).unwrap();
        assert!(t.samples.iter().all(|p| p.running_average == 1.0));
        assert_eq!(t.horizon, Horizon::Time(1000.0));
    }

    #[test]
    fn continuous_decay() {
        let t = cesaro_continuous(&SignalSpec::exponential(-1.0), 1000.0, 0.01).unwrap();
        assert!(t.final_estimate.abs() <= 1.0 / 1000.0 + 1e-6);
        assert!((t.final_estimate - 1e-3).abs() < 1e-6);
    }

    #[test]
    fn coarse_sampling_is_under_resolved() {
        let fast = SignalSpec::cosine_continuous(1.0, 10.0, 0.0);
        assert!(matches!(cesaro_continuous(&fast, 1000.0, 0.05), Err(Error::UnderResolved { .. })));
        // products oscillate at the summed frequency
        let p = SignalSpec::product(fast.clone(), fast).unwrap();
        assert!(matches!(cesaro_continuous(&p, 1000.0, 0.02), Err(Error::UnderResolved { .. })));
    }

    #[test]
    fn short_horizons_are_rejected() {
        let s = SignalSpec::unit_step(TimeDomain::Continuous);
        assert!(matches!(cesaro_continuous(&s, 1.0, 0.05), Err(Error::PreconditionViolation(_))));
        assert!(cesaro_continuous(&s, 1.0, 0.0).is_err());
        assert!(cesaro_of_spec(&s, 10).is_err());
    }

    #[test]
    fn csv_layout() {
        let spec = SignalSpec::terms(TimeDomain::Discrete, vec![ExpPolyTerm::real(2.0, 1.0, 0)]).unwrap();
        let csv = cesaro_of_spec(&spec, 4).unwrap().to_csv();
        assert_eq!(csv, "n,running_average\n0,2\n1,2\n3,2\n");
    }
}
