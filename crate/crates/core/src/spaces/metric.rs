use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::TRIANGLE_SLACK;

/// A finite metric space given by its distance matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct FiniteMetricSpace {
    n: usize,
    d: Vec<f64>,
}

impl FiniteMetricSpace {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.d.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn diameter(&self) -> f64 {
        self.d.iter().copied().fold(0.0, f64::max)
    }

    /// Smallest distance between distinct points, `inf` for fewer than two.
    pub fn min_distance(&self) -> f64 {
        let mut m = f64::INFINITY;
        for i in 0..self.n {
            for j in i + 1..self.n {
                m = m.min(self.dist(i, j));
            }
        }
        m
    }

    /// Build from a symmetric distance function without re-checking the
    /// triangle inequality; callers guarantee the axioms.
    pub(crate) fn from_fn_trusted(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
        }
        Self { n, d }
    }

    /// Sub-space on the given indices, in that order.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        Self::from_fn_trusted(idx.len(), |a, b| self.dist(idx[a], idx[b]))
    }
}

/// Validate a square matrix as a metric: finite, symmetric, zero diagonal,
/// positive off the diagonal, triangle inequality within `1e-9`.
#[allow(clippy::needless_range_loop)]
pub fn validate_metric(rows: &[Vec<f64>]) -> Result<FiniteMetricSpace> {
    let n = rows.len();
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::InvalidMetric(format!("row {i} has {} entries, expected {n}", r.len())));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let v = rows[i][j];
            if !v.is_finite() {
                return Err(Error::InvalidMetric(format!("entry ({i},{j}) is not finite")));
            }
            if v < 0.0 {
                return Err(Error::InvalidMetric(format!("negative entry {v} at ({i},{j})")));
            }
            if i == j && v != 0.0 {
                return Err(Error::InvalidMetric(format!("non-zero diagonal {v} at ({i},{i})")));
            }
            if i < j {
                if v != rows[j][i] {
                    return Err(Error::InvalidMetric(format!(
                        "asymmetry at ({i},{j}): {v} != {}",
                        rows[j][i]
                    )));
                }
                if v == 0.0 {
                    return Err(Error::InvalidMetric(format!("distinct points {i} and {j} at distance 0")));
                }
            }
        }
    }
    for i in 0..n {
        for k in i + 1..n {
            let direct = rows[i][k];
            for j in 0..n {
                let via = rows[i][j] + rows[j][k];
                if direct > via + TRIANGLE_SLACK * via.max(1.0) {
                    return Err(Error::InvalidMetric(format!(
                        "triangle violation at ({i},{k}) via {j}: {direct} > {} + {}",
                        rows[i][j], rows[j][k]
                    )));
                }
            }
        }
    }
    Ok(FiniteMetricSpace { n, d: rows.iter().flatten().copied().collect() })
}

impl TryFrom<Vec<Vec<f64>>> for FiniteMetricSpace {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        validate_metric(&rows)
    }
}

impl From<FiniteMetricSpace> for Vec<Vec<f64>> {
    fn from(m: FiniteMetricSpace) -> Self {
        m.rows()
    }
}
