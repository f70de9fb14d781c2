use rayon::prelude::*;

use super::report::{EmbeddingReport, PairCheck};
use super::Pairing;
use crate::error::{Error, Result};
use crate::parallel::{install, unordered_pairs};
use crate::spaces::FiniteMetricSpace;

/// Two-sided range bound `r d_X <= d_Y <= D r d_X` on exactly the pairs with
/// `d_X` in `[s1, s2]` (`s2` may be infinite). `r = D = 1` is the isometric
/// mode.
pub fn range_check(
    x: &FiniteMetricSpace,
    image: &FiniteMetricSpace,
    pairing: &Pairing,
    s1: f64,
    s2: f64,
    r: f64,
    distortion: f64,
) -> Result<EmbeddingReport> {
    if !(s1 > 0.0 && s1 <= s2) {
        return Err(Error::param(format!("range must satisfy 0 < s1 <= s2, got [{s1}, {s2}]")));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::param(format!("r must be positive, got {r}")));
    }
    if !(distortion >= 1.0 && distortion.is_finite()) {
        return Err(Error::param(format!("distortion must be at least 1, got {distortion}")));
    }
    pairing.validate(x, image)?;
    let rows = pair_rows(x, image, pairing, |dx| {
        (s1..=s2).contains(&dx).then_some((Some(r * dx), Some(distortion * r * dx)))
    });
    if rows.is_empty() {
        return Err(Error::EmptyRange);
    }
    Ok(EmbeddingReport::from_rows("range", rows))
}

/// `min{d_X, d_X^s} <= d_Y <= max{d_X, d_X^s}` on every pair. The lower half
/// is equivalent to `rho_hat(t) >= min{t, t^s}` at every realized `t`,
/// because `t -> min{t, t^s}` is non-decreasing.
pub fn snowflake_check(
    x: &FiniteMetricSpace,
    image: &FiniteMetricSpace,
    pairing: &Pairing,
    s: f64,
) -> Result<EmbeddingReport> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::param(format!("snowflake exponent must lie in (0, 1), got {s}")));
    }
    pairing.validate(x, image)?;
    let rows = pair_rows(x, image, pairing, |dx| {
        let ds = dx.powf(s);
        Some((Some(dx.min(ds)), Some(dx.max(ds))))
    });
    Ok(EmbeddingReport::from_rows("snowflake", rows))
}

/// Rows for all pairs where `bounds(d_X)` returns `Some((lower, upper))`.
fn pair_rows(
    x: &FiniteMetricSpace,
    image: &FiniteMetricSpace,
    pairing: &Pairing,
    bounds: impl Fn(f64) -> Option<(Option<f64>, Option<f64>)> + Sync,
) -> Vec<PairCheck> {
    let pairs = unordered_pairs(x.len());
    install(|| {
        pairs
            .par_iter()
            .filter_map(|&(i, j)| {
                let dx = x.dist(i, j);
                let (lo, hi) = bounds(dx)?;
                Some(PairCheck::new(i, j, dx, pairing.image_distance(image, i, j), lo, hi))
            })
            .collect()
    })
}
