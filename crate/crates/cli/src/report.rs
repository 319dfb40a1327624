use std::collections::BTreeMap;
use std::time::Instant;

use cesaro::averages::{ProductEstimate, Stability};
use cesaro::catalog::SignalSpec;
use cesaro::report::{Agreement, PoleJson, TraceSummary, VerdictJson};
use serde::Serialize;

use crate::input::TransformEcho;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub format_version: u32,
    pub command: &'static str,
    pub input_echo: InputEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product: Option<ProductJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<TraceSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<Agreement>,
    pub timing_ms: BTreeMap<&'static str, f64>,
}

impl RunReport {
    pub fn new(command: &'static str, input_echo: InputEcho) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            command,
            input_echo,
            verdict: None,
            system: None,
            product: None,
            oracle: None,
            agreement: None,
            timing_ms: BTreeMap::new(),
        }
    }

    /// Runs `f` and records its wall time under `stage`.
    pub fn timed<T>(&mut self, stage: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timing_ms.insert(stage, start.elapsed().as_secs_f64() * 1e3);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum InputEcho {
    Transform(TransformEcho),
    System {
        transfer: TransformEcho,
        #[serde(skip_serializing_if = "Option::is_none")]
        input_average: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        input_spec: Option<SignalSpec>,
    },
    Product {
        f: TransformEcho,
        g: TransformEcho,
    },
}

#[derive(Debug, Serialize)]
pub struct SystemJson {
    pub dc_gain: Option<[f64; 2]>,
    pub stability: Stability,
    /// Absent when the system is not stable.
    pub output_average: Option<f64>,
    pub poles: Vec<PoleJson>,
}

#[derive(Debug, Serialize)]
pub struct StageJson {
    pub delta: f64,
    pub radius: f64,
    pub points: usize,
    pub scaled_value: f64,
}

#[derive(Debug, Serialize)]
pub struct ProductJson {
    pub value: f64,
    pub previous: f64,
    pub stages: Vec<StageJson>,
}

impl From<&ProductEstimate> for ProductJson {
    fn from(p: &ProductEstimate) -> Self {
        Self {
            value: p.value,
            previous: p.previous,
            stages: p
                .stages
                .iter()
                .map(|s| StageJson { delta: s.delta, radius: s.radius, points: s.points, scaled_value: s.scaled_value })
                .collect(),
        }
    }
}
