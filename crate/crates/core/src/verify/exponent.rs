use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Pairing;
use crate::error::{Error, Result};
use crate::parallel::{install, unordered_pairs};
use crate::spaces::FiniteMetricSpace;

/// A witnessed pair `(alpha, C)` with `d_X^alpha / C <= d_Y <= C d_X` on
/// every sampled pair above the threshold. This is a lower estimate of the
/// compression exponent of the sample, not the supremum over all maps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentEstimate {
    pub alpha: f64,
    pub c: f64,
    pub threshold: f64,
    pub pairs_used: usize,
    /// Pair attaining the minimal log-ratio.
    pub witness: [usize; 2],
}

/// `C = max over pairs of max{d_Y / d_X, 1}` and
/// `alpha = min over pairs with d_X > max(tau, 1) of log(C d_Y) / log(d_X)`,
/// clamped to `[0, 1]`.
pub fn compression_exponent_estimate(
    x: &FiniteMetricSpace,
    image: &FiniteMetricSpace,
    pairing: &Pairing,
    tau: f64,
) -> Result<ExponentEstimate> {
    if tau.is_nan() {
        return Err(Error::param("threshold must be a number"));
    }
    pairing.validate(x, image)?;
    let threshold = tau.max(1.0);
    let pairs = unordered_pairs(x.len());
    let dist: Vec<(usize, usize, f64, f64)> = install(|| {
        pairs.par_iter().map(|&(i, j)| (i, j, x.dist(i, j), pairing.image_distance(image, i, j))).collect()
    });
    let c = dist.iter().map(|&(_, _, dx, dy)| (dy / dx).max(1.0)).fold(1.0, f64::max);

    let mut best: Option<(f64, [usize; 2])> = None;
    let mut used = 0;
    for &(i, j, dx, dy) in &dist {
        if dx > threshold {
            used += 1;
            let ratio = (c * dy).ln() / dx.ln();
            if best.is_none_or(|(b, _)| ratio < b) {
                best = Some((ratio, [i, j]));
            }
        }
    }
    let (raw, witness) = best.ok_or(Error::EmptyRange)?;
    Ok(ExponentEstimate { alpha: raw.clamp(0.0, 1.0), c, threshold, pairs_used: used, witness })
}
