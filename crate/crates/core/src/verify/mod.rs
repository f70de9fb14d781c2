//! Map-agnostic certification of a correspondence between two finite
//! spaces: empirical moduli, range and snowflake bounds, and the
//! compression exponent.
//!
//! A report certifies one map for one supplied modulus. It says nothing
//! about a whole family of moduli.

mod checks;
mod exponent;
mod profile;
mod report;

pub use checks::{range_check, snowflake_check};
pub use exponent::{compression_exponent_estimate, ExponentEstimate};
pub use profile::{measure_moduli, ModulusProfile};
pub use report::{EmbeddingReport, PairCheck};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::parallel::{install, unordered_pairs};
use crate::spaces::FiniteMetricSpace;

/// Correspondence from source points to image points.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Pairing {
    /// Source point `i` maps to image point `i`.
    #[default]
    Identity,
    /// Source point `i` maps to image point `map[i]`.
    Map(Vec<usize>),
}

impl Pairing {
    #[inline]
    pub fn image_index(&self, i: usize) -> usize {
        match self {
            Pairing::Identity => i,
            Pairing::Map(m) => m[i],
        }
    }

    #[inline]
    pub fn image_distance(&self, image: &FiniteMetricSpace, i: usize, j: usize) -> f64 {
        image.dist(self.image_index(i), self.image_index(j))
    }

    pub fn validate(&self, x: &FiniteMetricSpace, image: &FiniteMetricSpace) -> Result<()> {
        if x.len() != image.len() {
            return Err(Error::param(format!(
                "cardinality mismatch: {} source points, {} image points",
                x.len(),
                image.len()
            )));
        }
        if let Pairing::Map(m) = self {
            if m.len() != x.len() {
                return Err(Error::param(format!("pairing has {} entries for {} points", m.len(), x.len())));
            }
            if let Some(&bad) = m.iter().find(|&&k| k >= image.len()) {
                return Err(Error::param(format!("pairing refers to image point {bad}")));
            }
        }
        Ok(())
    }

    /// `(d_X, d_Y)` for every unordered pair, in lexicographic pair order.
    pub(crate) fn distance_pairs(&self, x: &FiniteMetricSpace, image: &FiniteMetricSpace) -> Vec<(f64, f64)> {
        let pairs = unordered_pairs(x.len());
        install(|| pairs.par_iter().map(|&(i, j)| (x.dist(i, j), self.image_distance(image, i, j))).collect())
    }
}
