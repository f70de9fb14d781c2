use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An `l_p` exponent in `[1, inf]`. Serialized as a number, or the string
/// `"inf"` for the max-norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(Exponent::Finite(p))
        } else {
            Err(Error::param(format!("exponent must lie in [1, inf], got {p}")))
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// `||v||_p`.
    pub fn norm(self, v: &[f64]) -> f64 {
        self.norm_iter(v.iter().copied())
    }

    pub fn norm_iter(self, v: impl Iterator<Item = f64>) -> f64 {
        match self {
            Exponent::Infinity => v.fold(0.0, |m, x| m.max(x.abs())),
            Exponent::Finite(1.0) => v.map(f64::abs).sum(),
            Exponent::Finite(2.0) => {
                // scaled to avoid overflow on large coordinates
                let xs: Vec<f64> = v.collect();
                let scale = xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                if scale == 0.0 {
                    return 0.0;
                }
                scale * xs.iter().map(|x| (x / scale) * (x / scale)).sum::<f64>().sqrt()
            }
            Exponent::Finite(p) => {
                let xs: Vec<f64> = v.collect();
                let scale = xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                if scale == 0.0 {
                    return 0.0;
                }
                scale * xs.iter().map(|x| (x.abs() / scale).powf(p)).sum::<f64>().powf(1.0 / p)
            }
        }
    }

    /// `||x - y||_p`.
    pub fn distance(self, x: &[f64], y: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), y.len());
        self.norm_iter(x.iter().zip(y).map(|(a, b)| a - b))
    }

    /// Combine per-block norms with this exponent as the outer exponent.
    pub fn combine(self, parts: impl Iterator<Item = f64>) -> f64 {
        self.norm_iter(parts)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Inf" => Ok(Exponent::Infinity),
            other => {
                let p: f64 = other.parse().map_err(|_| Error::param(format!("bad exponent `{other}`")))?;
                Exponent::new(p)
            }
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => s.serialize_f64(*p),
            Exponent::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Exponent;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number >= 1 or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Exponent, E> {
                Exponent::new(v).map_err(E::custom)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Exponent, E> {
                self.visit_f64(v as f64)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Exponent, E> {
                self.visit_f64(v as f64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Exponent, E> {
                if v == "inf" {
                    Ok(Exponent::Infinity)
                } else {
                    Err(E::custom(format!("unknown exponent string `{v}`")))
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms() {
        let v = [3.0, -4.0];
        assert_eq!(Exponent::Finite(1.0).norm(&v), 7.0);
        assert_eq!(Exponent::Finite(2.0).norm(&v), 5.0);
        assert_eq!(Exponent::Infinity.norm(&v), 4.0);
        let p3 = Exponent::Finite(3.0).norm(&v);
        assert!((p3 - 91f64.powf(1.0 / 3.0)).abs() < 1e-12);
        assert_eq!(Exponent::Finite(2.0).norm(&[]), 0.0);
    }

    #[test]
    fn json_forms() {
        assert_eq!(serde_json::to_string(&Exponent::Infinity).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<Exponent>("2").unwrap(), Exponent::Finite(2.0));
        assert_eq!(serde_json::from_str::<Exponent>("\"inf\"").unwrap(), Exponent::Infinity);
        assert!(serde_json::from_str::<Exponent>("0.5").is_err());
    }
}
