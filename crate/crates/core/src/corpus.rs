//! Shipped golden cases: a transform, the signal it came from, the expected
//! verdict and how to run the oracle on it.

use std::f64::consts::PI;

use crate::averages::{final_value, Applicability};
use crate::catalog::{cosine_transform, periodic_transform, transform_of, ExpPolyTerm, SignalSpec, TimeDomain};
use crate::error::Result;
use crate::oracle::{cesaro_continuous, cesaro_of_spec, RunningAverageTrace};
use crate::report::Agreement;
use crate::{AverageVerdict, RationalTransform, Tolerances};

/// Default discrete oracle horizon.
pub const DISCRETE_HORIZON: usize = 100_000;
/// Default continuous oracle horizon.
pub const CONTINUOUS_HORIZON: f64 = 1000.0;
/// Step used for the continuous corpus cases.
pub const CONTINUOUS_STEP: f64 = 0.01;

/// Verdict values are compared with the expected average to this.
pub const VALUE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleRun {
    Discrete { horizon: usize },
    Continuous { t_max: f64, dt: f64 },
}

#[derive(Debug, Clone)]
pub struct CorpusCase {
    pub name: String,
    pub transform: RationalTransform,
    pub spec: SignalSpec,
    pub expected: Applicability,
    /// Known average, for applicable cases.
    pub average: Option<f64>,
    pub oracle: OracleRun,
}

#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub name: String,
    pub verdict: AverageVerdict,
    pub trace: RunningAverageTrace,
    pub agreement: Option<Agreement>,
    pub passed: bool,
    /// Why the case failed; empty when it passed.
    pub failures: Vec<String>,
}

fn discrete(name: &str, transform: RationalTransform, spec: SignalSpec, expected: Applicability, average: Option<f64>) -> CorpusCase {
    CorpusCase {
        name: name.into(),
        transform,
        spec,
        expected,
        average,
        oracle: OracleRun::Discrete { horizon: DISCRETE_HORIZON },
    }
}

fn continuous(name: &str, spec: SignalSpec, expected: Applicability, average: Option<f64>) -> CorpusCase {
    CorpusCase {
        name: name.into(),
        transform: transform_of(&spec).expect("corpus specs have closed forms"),
        spec,
        expected,
        average,
        oracle: OracleRun::Continuous { t_max: CONTINUOUS_HORIZON, dt: CONTINUOUS_STEP },
    }
}

fn from_spec(name: &str, spec: SignalSpec, expected: Applicability, average: Option<f64>) -> CorpusCase {
    let transform = transform_of(&spec).expect("corpus specs have closed forms");
    discrete(name, transform, spec, expected, average)
}

/// The cosine family `cos(n w)` with its closed-form transform.
pub fn cosine_case(w: f64, label: &str) -> CorpusCase {
    let average = if (w / (2.0 * PI)).fract().abs() < 1e-12 { 1.0 } else { 0.0 };
    discrete(
        &format!("cosine w0={label}"),
        cosine_transform(w),
        SignalSpec::cosine(w),
        Applicability::Applicable,
        Some(average),
    )
}

pub fn cosine_cases() -> Vec<CorpusCase> {
    [
        (PI / 6.0, "pi/6"),
        (PI / 3.0, "pi/3"),
        (PI / 2.0, "pi/2"),
        (2.0 * PI / 3.0, "2pi/3"),
        (PI, "pi"),
        (2.0 * PI, "2pi"),
    ]
    .into_iter()
    .map(|(w, label)| cosine_case(w, label))
    .collect()
}

/// Every shipped case.
pub fn cases() -> Vec<CorpusCase> {
    use Applicability::*;
    let mut out = cosine_cases();
    let step = SignalSpec::unit_step(TimeDomain::Discrete);
    out.push(from_spec("unit step", step, Applicable, Some(1.0)));
    out.push(from_spec("geometric 0.5^n", SignalSpec::geometric(0.5), Applicable, Some(0.0)));
    out.push(from_spec("geometric 0.9^n", SignalSpec::geometric(0.9), Applicable, Some(0.0)));
    for pattern in [vec![1.0, -1.0], vec![0.4, 1.0, -3.0], vec![2.0, 0.0, 0.0, 1.0, 1.0]] {
        let mean = pattern.iter().sum::<f64>() / pattern.len() as f64;
        let name = format!("periodic {pattern:?}");
        let transform = periodic_transform(&pattern).expect("nonempty pattern");
        out.push(discrete(&name, transform, SignalSpec::periodic(pattern).expect("valid pattern"), Applicable, Some(mean)));
    }
    let step_plus_decay = SignalSpec::terms(
        TimeDomain::Discrete,
        vec![ExpPolyTerm::real(3.0, 1.0, 0), ExpPolyTerm::real(-2.0, 0.5, 0)],
    )
    .expect("real terms");
    out.push(from_spec("3 - 2 (0.5)^n", step_plus_decay, Applicable, Some(3.0)));

    out.push(continuous("continuous step", SignalSpec::unit_step(TimeDomain::Continuous), Applicable, Some(1.0)));
    out.push(continuous("cos t", SignalSpec::cosine_continuous(1.0, 1.0, 0.0), Applicable, Some(0.0)));
    out.push(continuous("sin 2t", SignalSpec::sine_continuous(2.0), Applicable, Some(0.0)));
    out.push(continuous("exp(-t)", SignalSpec::exponential(-1.0), Applicable, Some(0.0)));
    let offset_cosine = SignalSpec::terms(
        TimeDomain::Continuous,
        vec![
            ExpPolyTerm::real(0.5, 0.0, 0),
            ExpPolyTerm::new(0.5.into(), crate::Complex::new(0.0, 3.0), 0),
            ExpPolyTerm::new(0.5.into(), crate::Complex::new(0.0, -3.0), 0),
        ],
    )
    .expect("conjugate terms");
    out.push(continuous("0.5 + cos 3t", offset_cosine, Applicable, Some(0.5)));

    out.push(from_spec("growth 2^n", SignalSpec::geometric(2.0), FormalOnly, None));
    out.push(continuous("growth exp(t)", SignalSpec::exponential(1.0), FormalOnly, None));
    let ramp = SignalSpec::terms(TimeDomain::Discrete, vec![ExpPolyTerm::real(1.0, 1.0, 1)]).expect("real term");
    out.push(from_spec("ramp n", ramp, Divergent, None));
    let ramp_t = SignalSpec::terms(TimeDomain::Continuous, vec![ExpPolyTerm::real(1.0, 0.0, 1)]).expect("real term");
    out.push(continuous("ramp t", ramp_t, Divergent, None));
    out
}

pub fn run_oracle(case: &CorpusCase) -> Result<RunningAverageTrace> {
    match case.oracle {
        OracleRun::Discrete { horizon } => cesaro_of_spec(&case.spec, horizon),
        OracleRun::Continuous { t_max, dt } => cesaro_continuous(&case.spec, t_max, dt),
    }
}

/// Evaluates the verdict and the oracle and checks them against the expectations.
pub fn run_case(case: &CorpusCase, tol: &Tolerances) -> Result<CaseOutcome> {
    let verdict = final_value(&case.transform, tol)?;
    let trace = run_oracle(case)?;
    let mut failures = Vec::new();
    if verdict.applicability != case.expected {
        failures.push(format!("expected {}, got {}", case.expected, verdict.applicability));
    }
    if let (Some(want), Some(got)) = (case.average, verdict.value) {
        if (want - got).abs() > VALUE_TOL {
            failures.push(format!("value {got} differs from {want}"));
        }
    }
    if case.expected != Applicability::Applicable && verdict.value.is_some() {
        failures.push("a value was reported for a signal without an average".into());
    }
    let agreement = verdict.value.map(|v| Agreement::between(v, &trace));
    match (case.expected, agreement) {
        (Applicability::Applicable, Some(a)) if !a.within_tolerance => {
            failures.push(format!("oracle differs by {:e}", a.difference));
        }
        (Applicability::Applicable, _) => {}
        _ if trace.converged => failures.push("oracle converged for a signal without an average".into()),
        _ => {}
    }
    Ok(CaseOutcome { name: case.name.clone(), passed: failures.is_empty(), verdict, trace, agreement, failures })
}
