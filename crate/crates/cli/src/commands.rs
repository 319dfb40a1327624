use std::fs::File;
use std::io::{BufWriter, Write};
use std::thread;

use cesaro::averages::{final_value, product_average, Applicability, ContourOptions, Stability};
use cesaro::catalog::{coefficients_from_transform, synthesize, transform_of, SignalSpec, TimeDomain};
use cesaro::corpus::{self, CaseOutcome};
use cesaro::oracle::{cesaro_continuous, cesaro_discrete, cesaro_of_spec, filter_and_average, RunningAverageTrace};
use cesaro::report::{Agreement, PoleJson, TraceSummary, VerdictJson};
use cesaro::{Domain, Error, LtiSystem, Tolerances};

use crate::input::{self, Parsed};
use crate::report::{InputEcho, ProductJson, RunReport, SystemJson};
use crate::{exit, AverageArgs, Failure, OracleOptions, ProductArgs, SystemArgs, TraceArgs};

pub fn exit_code(a: Applicability) -> u8 {
    match a {
        Applicability::Applicable => exit::APPLICABLE,
        Applicability::FormalOnly => exit::FORMAL_ONLY,
        Applicability::Divergent => exit::DIVERGENT,
    }
}

pub fn average(args: &AverageArgs, tol: &Tolerances) -> Result<u8, Failure> {
    let domain = args.domain.domain();
    let started = std::time::Instant::now();
    let parsed = input::parse_transform(
        domain,
        args.input.num.as_deref(),
        args.input.den.as_deref(),
        args.input.spec.as_deref(),
        "transform",
    )?;
    let mut report = RunReport::new("average", InputEcho::Transform(parsed.echo()));
    report.timing_ms.insert("parse", started.elapsed().as_secs_f64() * 1e3);

    let verdict = report.timed("verdict", || final_value(&parsed.transform, tol))?;
    report.verdict = Some(VerdictJson::from(&verdict));
    if let Some(horizon) = args.oracle.oracle {
        let trace = report.timed("oracle", || oracle_for(&parsed, horizon, &args.oracle))?;
        report.agreement = agreement(verdict.value, &trace);
        report.oracle = Some(TraceSummary::from(&trace));
    }
    println!("{}", report.to_json());
    Ok(exit_code(verdict.applicability))
}

/// Only finite oracle estimates can be compared.
fn agreement(value: Option<f64>, trace: &RunningAverageTrace) -> Option<Agreement> {
    value.filter(|_| trace.final_estimate.is_finite()).map(|v| Agreement::between(v, trace))
}

fn oracle_for(parsed: &Parsed, horizon: usize, options: &OracleOptions) -> Result<RunningAverageTrace, Failure> {
    match (parsed.transform.domain(), &parsed.spec) {
        (Domain::Z, Some(spec)) => Ok(cesaro_of_spec(spec, horizon)?),
        (Domain::Z, None) => Ok(cesaro_discrete(&coefficients_from_transform(&parsed.transform, horizon)?)?),
        (Domain::S, Some(spec)) => Ok(cesaro_continuous(spec, options.t_max, options.dt)?),
        (Domain::S, None) => Err(Failure::usage("a continuous oracle needs the signal as a --spec file")),
    }
}

pub fn system(args: &SystemArgs, tol: &Tolerances) -> Result<u8, Failure> {
    let domain = args.domain.domain();
    let started = std::time::Instant::now();
    let h = input::parse_transform(domain, Some(&args.num), Some(&args.den), None, "transfer function")?;
    let x_spec = args.xspec.as_deref().map(|p| input::read_spec(p, domain)).transpose()?;
    let mut report = RunReport::new(
        "system",
        InputEcho::System { transfer: h.echo(), input_average: args.xavg, input_spec: x_spec.clone() },
    );
    report.timing_ms.insert("parse", started.elapsed().as_secs_f64() * 1e3);

    let (x_avg, input_class) = match (&x_spec, args.xavg) {
        (Some(spec), _) => {
            let v = report.timed("verdict", || transform_of(spec).and_then(|t| final_value(&t, tol)))?;
            report.verdict = Some(VerdictJson::from(&v));
            (v.value, Some(v.applicability))
        }
        (None, avg) => (avg, None),
    };

    let system = report.timed("system", || LtiSystem::new(h.transform.clone(), tol))?;
    let poles: Vec<PoleJson> = system
        .poles()
        .iter()
        .map(|p| PoleJson { re: p.location.re, im: p.location.im, mult: p.multiplicity })
        .collect();
    let (dc_gain, gain_error) = match system.dc_gain(tol) {
        Ok(g) => (Some([g.re, g.im]), None),
        Err(e) => (None, Some(e)),
    };
    let problem = gain_error.or_else(|| match system.stability() {
        Stability::Stable => None,
        _ => Some(Error::UnstableSystem { poles: poles.iter().map(|p| (p.re, p.im)).collect() }),
    });
    let output_average = match (&problem, x_avg) {
        (None, Some(x)) => Some(system.output_average(x, tol)?),
        _ => None,
    };
    report.system = Some(SystemJson { dc_gain, stability: system.stability(), output_average, poles });

    if let (Some(horizon), Some(spec), None) = (args.oracle, &x_spec, &problem) {
        if domain != Domain::Z {
            return Err(Failure::usage("direct filtering is available for discrete systems only"));
        }
        let trace = report.timed("oracle", || {
            synthesize(spec, horizon, 1.0).and_then(|x| filter_and_average(system.transfer(), &x))
        })?;
        report.agreement = agreement(output_average, &trace);
        report.oracle = Some(TraceSummary::from(&trace));
    }

    println!("{}", report.to_json());
    if let Some(e) = problem {
        return Err(e.into());
    }
    Ok(input_class.map_or(exit::APPLICABLE, exit_code))
}

pub fn trace(args: &TraceArgs) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(&args.spec)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", args.spec.display())))?;
    let spec = SignalSpec::from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", args.spec.display())))?;
    let trace = match spec.domain() {
        TimeDomain::Discrete => {
            if args.horizon < 2 {
                return Err(Failure::usage(format!("horizon must be at least 2, got {}", args.horizon)));
            }
            cesaro_of_spec(&spec, args.horizon)?
        }
        TimeDomain::Continuous => cesaro_continuous(&spec, args.t_max, args.dt)?,
    };
    let io_error = |e: std::io::Error| Failure::usage(format!("cannot write {}: {e}", args.out.display()));
    let mut out = BufWriter::new(File::create(&args.out).map_err(io_error)?);
    trace.write_csv(&mut out).map_err(io_error)?;
    out.flush().map_err(io_error)?;
    println!(
        "final_estimate={} error_estimate={:e} converged={}",
        trace.final_estimate, trace.error_estimate, trace.converged
    );
    Ok(exit::APPLICABLE)
}

pub fn product(args: &ProductArgs, tol: &Tolerances) -> Result<u8, Failure> {
    let started = std::time::Instant::now();
    let f = input::parse_transform(Domain::Z, args.f_num.as_deref(), args.f_den.as_deref(), args.f_spec.as_deref(), "F")?;
    let g = input::parse_transform(Domain::Z, args.g_num.as_deref(), args.g_den.as_deref(), args.g_spec.as_deref(), "G")?;
    if args.horizon == 0 {
        return Err(Failure::usage("horizon must be positive"));
    }
    let mut report = RunReport::new("product", InputEcho::Product { f: f.echo(), g: g.echo() });
    report.timing_ms.insert("parse", started.elapsed().as_secs_f64() * 1e3);

    let options = ContourOptions { radius: args.radius, points: args.points, ..ContourOptions::default() };
    let estimate = report.timed("contour", || product_average(&f.transform, &g.transform, &options, tol))?;
    let trace = report.timed("oracle", || -> Result<RunningAverageTrace, Error> {
        let a = samples(&f, args.horizon)?;
        let b = samples(&g, args.horizon)?;
        let product: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        cesaro_discrete(&product)
    })?;
    report.product = Some(ProductJson::from(&estimate));
    report.agreement = agreement(Some(estimate.value), &trace);
    report.oracle = Some(TraceSummary::from(&trace));
    println!("{}", report.to_json());
    Ok(exit::APPLICABLE)
}

fn samples(p: &Parsed, count: usize) -> Result<Vec<f64>, Error> {
    match &p.spec {
        Some(spec) => synthesize(spec, count, 1.0),
        None => coefficients_from_transform(&p.transform, count),
    }
}

pub fn corpus(tol: &Tolerances) -> Result<u8, Failure> {
    let cases = corpus::cases();
    let outcomes: Vec<(String, Result<CaseOutcome, Error>)> = thread::scope(|scope| {
        let handles: Vec<_> = cases
            .iter()
            .map(|case| scope.spawn(move || (case.name.clone(), corpus::run_case(case, tol))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("corpus case panicked")).collect()
    });

    println!("{:<24} {:<11} {:<11} {:>12} {:>12} {:>10}  result", "case", "expected", "verdict", "value", "oracle", "error");
    let mut failed = 0;
    for ((name, outcome), case) in outcomes.iter().zip(&cases) {
        match outcome {
            Ok(o) => {
                let value = o.verdict.value.map_or("-".to_string(), |v| format!("{v:.6}"));
                let status = if o.passed { "PASS".to_string() } else { format!("FAIL ({})", o.failures.join("; ")) };
                println!(
                    "{:<24} {:<11} {:<11} {:>12} {:>12.6} {:>10.1e}  {}",
                    name,
                    case.expected.to_string(),
                    o.verdict.applicability.to_string(),
                    value,
                    o.trace.final_estimate,
                    o.trace.error_estimate,
                    status
                );
                failed += usize::from(!o.passed);
            }
            Err(e) => {
                println!("{:<24} {:<11} {:<11} {:>12} {:>12} {:>10}  FAIL ({e})", name, case.expected.to_string(), "-", "-", "-", "-");
                failed += 1;
            }
        }
    }
    println!("{} of {} cases passed", cases.len() - failed, cases.len());
    Ok(if failed == 0 { exit::APPLICABLE } else { exit::CORPUS_FAILURE })
}
