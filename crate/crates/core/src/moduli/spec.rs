//! Serialized form of [`ModulusCurve`].
//!
//! ```json
//! {"family":"power_rho","alpha":0.5}
//! {"family":"exp_floor"}
//! {"family":"pl","points":[[0,0],[1,1]],"tail":{"kind":"power","alpha":0.5}}
//! ```
//!
//! `pl` curves accept an optional `head` descriptor with the same shape as
//! `tail`; it defaults to `{"kind":"power","alpha":1}`.

use serde::{Deserialize, Serialize};

use super::curve::{Extension, Family, ModulusCurve};
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtensionSpec {
    Power { alpha: f64 },
    Affine { slope: f64 },
}

impl From<ExtensionSpec> for Extension {
    fn from(s: ExtensionSpec) -> Self {
        match s {
            ExtensionSpec::Power { alpha } => Extension::Power { alpha },
            ExtensionSpec::Affine { slope } => Extension::Affine { slope },
        }
    }
}

impl From<Extension> for ExtensionSpec {
    fn from(e: Extension) -> Self {
        match e {
            Extension::Power { alpha } => ExtensionSpec::Power { alpha },
            Extension::Affine { slope } => ExtensionSpec::Affine { slope },
        }
    }
}

fn default_head() -> ExtensionSpec {
    ExtensionSpec::Power { alpha: 1.0 }
}

fn is_default_head(h: &ExtensionSpec) -> bool {
    *h == default_head()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveSpec {
    PowerRho {
        alpha: f64,
    },
    PowerOmega {
        alpha: f64,
    },
    ExpFloor,
    #[serde(rename = "pl")]
    PiecewiseLinear {
        points: Vec<[f64; 2]>,
        #[serde(default = "default_head", skip_serializing_if = "is_default_head")]
        head: ExtensionSpec,
        tail: ExtensionSpec,
    },
    Log2Dominated {
        base: Box<CurveSpec>,
    },
}

impl TryFrom<CurveSpec> for ModulusCurve {
    type Error = Error;

    fn try_from(spec: CurveSpec) -> Result<Self, Error> {
        match spec {
            CurveSpec::PowerRho { alpha } => ModulusCurve::power_rho(alpha),
            CurveSpec::PowerOmega { alpha } => ModulusCurve::power_omega(alpha),
            CurveSpec::ExpFloor => Ok(ModulusCurve::exp_floor()),
            CurveSpec::PiecewiseLinear { points, head, tail } => ModulusCurve::piecewise_linear(
                points.into_iter().map(|[t, v]| (t, v)).collect(),
                head.into(),
                tail.into(),
            ),
            CurveSpec::Log2Dominated { base } => {
                Ok(ModulusCurve::log2_dominated(ModulusCurve::try_from(*base)?))
            }
        }
    }
}

impl From<ModulusCurve> for CurveSpec {
    fn from(c: ModulusCurve) -> Self {
        match c.family() {
            Family::PowerRho { alpha } => CurveSpec::PowerRho { alpha: *alpha },
            Family::PowerOmega { alpha } => CurveSpec::PowerOmega { alpha: *alpha },
            Family::ExpFloor => CurveSpec::ExpFloor,
            Family::PiecewiseLinear(pl) => CurveSpec::PiecewiseLinear {
                points: pl.points().iter().map(|&(t, v)| [t, v]).collect(),
                head: pl.head().into(),
                tail: pl.tail().into(),
            },
            Family::Log2Dominated(base) => CurveSpec::Log2Dominated {
                base: Box::new(CurveSpec::from((**base).clone())),
            },
        }
    }
}

impl ModulusCurve {
    pub fn from_json(text: &str) -> crate::error::Result<Self> {
        let spec: CurveSpec = serde_json::from_str(text)?;
        ModulusCurve::try_from(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("curve specs always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_shapes() {
        let a = ModulusCurve::from_json(r#"{"family":"power_rho","alpha":0.5}"#).unwrap();
        assert_eq!(a, ModulusCurve::power_rho(0.5).unwrap());
        let b = ModulusCurve::from_json(r#"{"family":"exp_floor"}"#).unwrap();
        assert_eq!(b, ModulusCurve::exp_floor());
        let c = ModulusCurve::from_json(
            r#"{"family":"pl","points":[[0,0],[1,1]],"tail":{"kind":"power","alpha":0.5}}"#,
        )
        .unwrap();
        assert_eq!(c.eval(4.0).unwrap(), 2.0);
    }

    #[test]
    fn pl_round_trips_through_json() {
        let c = ModulusCurve::piecewise_linear(
            vec![(0.001, 0.1), (1.0, 1.0)],
            Extension::Power { alpha: 0.3 },
            Extension::Affine { slope: 1.0 },
        )
        .unwrap();
        let text = c.to_json();
        assert!(text.contains("\"family\":\"pl\""));
        assert_eq!(ModulusCurve::from_json(&text).unwrap(), c);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ModulusCurve::from_json(r#"{"family":"power_rho","alpha":1.5}"#).is_err());
        assert!(ModulusCurve::from_json(r#"{"family":"nope"}"#).is_err());
        assert!(ModulusCurve::from_json("{").is_err());
    }
}
