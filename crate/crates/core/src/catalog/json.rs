//! JSON wire format for [`SignalSpec`]:
//!
//! ```json
//! { "domain": "discrete",
//!   "terms": [ { "amp": 0.5, "re_base": 0.5, "im_base": 0.866, "power": 0 } ] }
//! ```
//!
//! Exactly one of `terms`, `periodic_pattern`, `product_of` is present.
//! `im_amp` (imaginary part of the amplitude) is optional and omitted when zero.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{ExpPolyTerm, SignalBody, SignalSpec, TimeDomain};
use crate::error::Error;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    amp: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    im_amp: f64,
    re_base: f64,
    im_base: f64,
    power: u32,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecJson {
    domain: TimeDomain,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<TermJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    periodic_pattern: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    product_of: Option<Box<(SignalSpec, SignalSpec)>>,
}

impl TryFrom<SpecJson> for SignalSpec {
    type Error = Error;

    fn try_from(raw: SpecJson) -> Result<Self, Error> {
        let body = match (raw.terms, raw.periodic_pattern, raw.product_of) {
            (Some(terms), None, None) => SignalBody::Terms(
                terms
                    .into_iter()
                    .map(|t| ExpPolyTerm {
                        amplitude: Complex::new(t.amp, t.im_amp),
                        base: Complex::new(t.re_base, t.im_base),
                        power: t.power,
                    })
                    .collect(),
            ),
            (None, Some(pattern), None) => SignalBody::Periodic(pattern),
            (None, None, Some(pair)) => {
                let (a, b) = *pair;
                SignalBody::Product(Box::new(a), Box::new(b))
            }
            _ => {
                return Err(Error::InvalidSpec(
                    "exactly one of `terms`, `periodic_pattern`, `product_of` must be given".into(),
                ))
            }
        };
        SignalSpec::new(raw.domain, body)
    }
}

impl From<&SignalSpec> for SpecJson {
    fn from(spec: &SignalSpec) -> Self {
        let mut out = SpecJson { domain: spec.domain, terms: None, periodic_pattern: None, product_of: None };
        match &spec.body {
            SignalBody::Terms(terms) => {
                out.terms = Some(
                    terms
                        .iter()
                        .map(|t| TermJson {
                            amp: t.amplitude.re,
                            im_amp: t.amplitude.im,
                            re_base: t.base.re,
                            im_base: t.base.im,
                            power: t.power,
                        })
                        .collect(),
                )
            }
            SignalBody::Periodic(p) => out.periodic_pattern = Some(p.clone()),
            SignalBody::Product(a, b) => out.product_of = Some(Box::new(((**a).clone(), (**b).clone()))),
        }
        out
    }
}

impl Serialize for SignalSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SpecJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SignalSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = SpecJson::deserialize(deserializer)?;
        SignalSpec::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl SignalSpec {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}
