use std::fs;
use std::path::Path;

use cesaro::catalog::{transform_of, SignalSpec, TimeDomain};
use cesaro::{Domain, RationalTransform, Tolerances};
use serde::Serialize;

use crate::Failure;

/// Echo of what was parsed, written into the report.
#[derive(Debug, Clone, Serialize)]
pub struct TransformEcho {
    pub domain: Domain,
    /// Ascending powers, constant first.
    pub numerator: Vec<f64>,
    pub denominator: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<SignalSpec>,
}

pub struct Parsed {
    pub transform: RationalTransform,
    pub spec: Option<SignalSpec>,
}

impl Parsed {
    pub fn echo(&self) -> TransformEcho {
        let real = |p: &cesaro::Polynomial| p.coeffs().iter().map(|c| c.re).collect::<Vec<_>>();
        TransformEcho {
            domain: self.transform.domain(),
            numerator: real(self.transform.numerator()),
            denominator: real(self.transform.denominator()),
            spec: self.spec.clone(),
        }
    }
}

pub fn read_spec(path: &Path, domain: Domain) -> Result<SignalSpec, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let spec = SignalSpec::from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    if spec.domain().transform_domain() != domain {
        let found = match spec.domain() {
            TimeDomain::Discrete => "discrete",
            TimeDomain::Continuous => "continuous",
        };
        return Err(Failure::usage(format!(
            "{}: spec is {found} but the {} domain was requested",
            path.display(),
            domain
        )));
    }
    Ok(spec)
}

/// A transform from either coefficient lists or a spec file.
pub fn parse_transform(
    domain: Domain,
    num: Option<&[f64]>,
    den: Option<&[f64]>,
    spec: Option<&Path>,
    what: &str,
) -> Result<Parsed, Failure> {
    match (num, den, spec) {
        (Some(num), Some(den), None) => {
            check_finite(num, what)?;
            check_finite(den, what)?;
            let transform = RationalTransform::from_coeffs(num, den, domain).map_err(|e| Failure::usage(format!("{what}: {e}")))?;
            Ok(Parsed { transform, spec: None })
        }
        (None, None, Some(path)) => {
            let spec = read_spec(path, domain)?;
            let transform = transform_of(&spec).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            Ok(Parsed { transform, spec: Some(spec) })
        }
        _ => Err(Failure::usage(format!("{what}: give either a numerator and denominator, or a spec file"))),
    }
}

fn check_finite(values: &[f64], what: &str) -> Result<(), Failure> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Failure::usage(format!("{what}: coefficients must be finite")))
    }
}

pub fn read_tolerances(path: Option<&Path>) -> Result<Tolerances, Failure> {
    let Some(path) = path else {
        return Ok(Tolerances::default());
    };
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}
