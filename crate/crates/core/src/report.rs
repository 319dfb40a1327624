//! Serializable projections of verdicts and traces.

use serde::{Deserialize, Serialize};

use crate::averages::Applicability;
use crate::oracle::{Horizon, RunningAverageTrace};
use crate::AverageVerdict;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleJson {
    pub re: f64,
    pub im: f64,
    pub mult: usize,
}

/// Wire form of an [`AverageVerdict`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub value: Option<f64>,
    pub formal_limit: Option<[f64; 2]>,
    pub applicability: Applicability,
    pub poles: Vec<PoleJson>,
    pub notes: Vec<String>,
}

impl From<&AverageVerdict> for VerdictJson {
    fn from(v: &AverageVerdict) -> Self {
        Self {
            value: v.value,
            formal_limit: v.formal_limit.map(|c| [c.re, c.im]),
            applicability: v.applicability,
            poles: v
                .diagnostics
                .iter()
                .map(|p| PoleJson { re: p.location.re, im: p.location.im, mult: p.multiplicity })
                .collect(),
            notes: v.notes.clone(),
        }
    }
}

/// A trace without its checkpoint rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub final_estimate: f64,
    pub error_estimate: f64,
    pub converged: bool,
    pub horizon: Horizon,
    pub checkpoints: usize,
}

impl From<&RunningAverageTrace> for TraceSummary {
    fn from(t: &RunningAverageTrace) -> Self {
        Self {
            final_estimate: t.final_estimate,
            error_estimate: t.error_estimate,
            converged: t.converged,
            horizon: t.horizon,
            checkpoints: t.samples.len(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Agreement {
    pub difference: f64,
    pub within_tolerance: bool,
}

/// Oracle agreement is accepted within this, or five oracle error estimates if larger.
pub const AGREEMENT_TOL: f64 = 1e-3;

impl Agreement {
    pub fn between(value: f64, trace: &RunningAverageTrace) -> Self {
        let difference = (value - trace.final_estimate).abs();
        let allowed = AGREEMENT_TOL.max(5.0 * trace.error_estimate);
        Self { difference, within_tolerance: difference <= allowed }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::averages::final_value_z;
    use crate::oracle::cesaro_discrete;
    use crate::{RationalTransform, Tolerances};
    use crate::Domain;

    #[test]
    fn verdict_field_names() {
        let f = RationalTransform::from_coeffs(&[0.0, 1.0], &[-1.0, 1.0], Domain::Z).unwrap();
        let v = final_value_z(&f, &Tolerances::default()).unwrap();
        let json = serde_json::to_value(VerdictJson::from(&v)).unwrap();
        assert_eq!(json["value"], 1.0);
        assert_eq!(json["formal_limit"], serde_json::json!([1.0, 0.0]));
        assert_eq!(json["applicability"], "Applicable");
        assert!(json["poles"].as_array().unwrap().is_empty());
        assert!(json["notes"].is_array());
    }

    #[test]
    fn formal_only_has_null_value() {
        let f = RationalTransform::from_coeffs(&[0.0, 1.0], &[-2.0, 1.0], Domain::Z).unwrap();
        let v = final_value_z(&f, &Tolerances::default()).unwrap();
        let json = serde_json::to_value(VerdictJson::from(&v)).unwrap();
        assert!(json["value"].is_null());
        assert_eq!(json["poles"][0]["mult"], 1);
    }

    #[test]
    fn agreement_uses_the_larger_allowance() {
        let x: Vec<f64> = (0..1000).map(|n| (1 - n % 2) as f64).collect();
        let t = cesaro_discrete(&x).unwrap();
        assert!(Agreement::between(0.5, &t).within_tolerance);
        assert!(!Agreement::between(0.6, &t).within_tolerance);
    }
}
