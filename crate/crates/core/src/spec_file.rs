//! JSON domain descriptions.
//!
//! ```json
//! {"type": "slit_complement",
//!  "base": {"type": "half_plane"},
//!  "slits": [{"x": -1, "y_top": 1, "y_bottom": 0}]}
//! ```
//!
//! Complex numbers are `[re, im]` pairs; a `null` strip side is infinite.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::corpus;
use crate::geometry::{Curve, Domain, SlitSet, VerticalSlit};
use crate::{Complex, Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    Sector {
        #[serde(default)]
        p: [f64; 2],
        beta1: f64,
        beta2: f64,
    },
    HalfPlane,
    Strip {
        a: Option<f64>,
        b: Option<f64>,
    },
    Epigraph {
        curve: Curve,
    },
    SlitComplement {
        base: Box<DomainSpec>,
        slits: Vec<VerticalSlit>,
    },
    Scaled {
        base: Box<DomainSpec>,
        c: f64,
    },
    Translated {
        base: Box<DomainSpec>,
        w0: [f64; 2],
    },
    Corpus {
        name: String,
        #[serde(default)]
        params: Value,
    },
}

fn cx(v: [f64; 2]) -> Complex {
    Complex::new(v[0], v[1])
}

impl DomainSpec {
    pub fn build(&self) -> Result<Domain> {
        match self {
            DomainSpec::Sector { p, beta1, beta2 } => Domain::sector(cx(*p), *beta1, *beta2),
            DomainSpec::HalfPlane => Ok(Domain::half_plane_upper()),
            DomainSpec::Strip { a, b } => {
                let (a, b) = (a.unwrap_or(f64::NEG_INFINITY), b.unwrap_or(f64::INFINITY));
                Domain::vertical_strip(a, b)
            }
            DomainSpec::Epigraph { curve } => Domain::epigraph(curve.clone()),
            DomainSpec::SlitComplement { base, slits } => {
                let base = match base.as_ref() {
                    DomainSpec::Strip { a: None, b: None } => Domain::VerticalStrip { a: f64::NEG_INFINITY, b: f64::INFINITY },
                    other => other.build()?,
                };
                Domain::slit_complement(base, SlitSet::fixed(slits.clone()))
            }
            DomainSpec::Scaled { base, c } => base.build()?.scaled(*c),
            DomainSpec::Translated { base, w0 } => base.build()?.translated(cx(*w0)),
            DomainSpec::Corpus { name, params } => corpus::build(name, params),
        }
    }
}

/// Parses a spec given either inline (text starting with `{`) or as a path.
pub fn load(arg: &str) -> Result<DomainSpec> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| Error::Config(format!("cannot read domain spec {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("bad domain spec: {e}")))
}

pub fn load_domain(arg: &str) -> Result<Domain> {
    load(arg)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_specs() {
        let s = r#"{"type":"translated","w0":[1,2],"base":{"type":"scaled","c":2,"base":{"type":"sector","beta1":1,"beta2":0.5}}}"#;
        let d = load_domain(s).unwrap();
        assert_eq!(d.kind(), "translated");
        assert!(d.contains(Complex::new(1.0, 4.0)));
    }

    #[test]
    fn plane_base_is_allowed_under_slits() {
        let s = r#"{"type":"slit_complement","base":{"type":"strip","a":null,"b":null},"slits":[{"x":0,"y_top":0}]}"#;
        assert!(load_domain(s).is_ok());
        assert!(load_domain(r#"{"type":"strip","a":null,"b":null}"#).is_err());
    }

    #[test]
    fn corpus_reference_and_errors() {
        assert!(load_domain(r#"{"type":"corpus","name":"cubic"}"#).is_ok());
        assert!(matches!(load(r#"{"type":"bogus"}"#), Err(Error::Config(_))));
        assert!(matches!(load("/nonexistent/spec.json"), Err(Error::Config(_))));
        assert!(matches!(load_domain(r#"{"type":"sector","beta1":4,"beta2":1}"#), Err(Error::InvalidDomain(_))));
    }
}
