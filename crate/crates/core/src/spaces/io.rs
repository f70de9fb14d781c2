//! File formats for spaces.
//!
//! ```json
//! {"type":"points","p":2,"coords":[[0,0],[1,0]],"basepoint":0}
//! {"type":"matrix","d":[[0,1],[1,0]]}
//! ```

use serde::{Deserialize, Serialize};

use super::exponent::Exponent;
use super::metric::{validate_metric, FiniteMetricSpace};
use super::points::LpPointSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SpaceFile {
    Points {
        p: Exponent,
        coords: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        basepoint: Option<usize>,
    },
    Matrix {
        d: Vec<Vec<f64>>,
    },
}

/// A parsed and validated space.
#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Points(LpPointSet),
    Metric(FiniteMetricSpace),
}

impl Space {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SpaceFile = serde_json::from_str(text)?;
        file.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SpaceFile::from(self)).expect("spaces always serialize")
    }

    pub fn len(&self) -> usize {
        match self {
            Space::Points(s) => s.len(),
            Space::Metric(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn metric(&self) -> FiniteMetricSpace {
        match self {
            Space::Points(s) => s.to_metric(),
            Space::Metric(m) => m.clone(),
        }
    }

    pub fn basepoint(&self) -> Option<usize> {
        match self {
            Space::Points(s) => s.basepoint(),
            Space::Metric(_) => None,
        }
    }

    pub fn into_points(self) -> Result<LpPointSet> {
        match self {
            Space::Points(s) => Ok(s),
            Space::Metric(_) => Err(Error::InvalidPoints("expected a point set, got a distance matrix".into())),
        }
    }
}

impl TryFrom<SpaceFile> for Space {
    type Error = Error;

    fn try_from(f: SpaceFile) -> Result<Self> {
        match f {
            SpaceFile::Points { p, coords, basepoint } => Ok(Space::Points(LpPointSet::new(p, coords, basepoint)?)),
            SpaceFile::Matrix { d } => Ok(Space::Metric(validate_metric(&d)?)),
        }
    }
}

impl From<&Space> for SpaceFile {
    fn from(s: &Space) -> Self {
        match s {
            Space::Points(s) => SpaceFile::Points { p: s.p(), coords: s.points().to_vec(), basepoint: s.basepoint() },
            Space::Metric(m) => SpaceFile::Matrix { d: m.rows() },
        }
    }
}
