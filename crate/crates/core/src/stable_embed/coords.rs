use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moduli::{check_class, Class, Modulus, ModulusCurve, DEFAULT_DENSITY};
use crate::spaces::FiniteMetricSpace;

/// Coordinate `(p, q)` of the embedding, with weight `rho(d(p,q)) / d(p,q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KaltonCoordinate {
    pub p: usize,
    pub q: usize,
    pub weight: f64,
}

fn check_indices(m: &FiniteMetricSpace, idx: &[usize]) -> Result<()> {
    if let Some(&bad) = idx.iter().find(|&&i| i >= m.len()) {
        return Err(Error::param(format!("point index {bad} out of range for {} points", m.len())));
    }
    Ok(())
}

/// `max{d(p,q) - d(q,x), 0} - max{d(p,q) - d(q,0), 0}` with `0` the basepoint.
#[inline]
pub(crate) fn g_unchecked(m: &FiniteMetricSpace, base: usize, p: usize, q: usize, x: usize) -> f64 {
    let dpq = m.dist(p, q);
    (dpq - m.dist(q, x)).max(0.0) - (dpq - m.dist(q, base)).max(0.0)
}

/// Truncated distance function `g_{p,q}(x)`; vanishes at the basepoint.
pub fn g_pq(m: &FiniteMetricSpace, basepoint: usize, p: usize, q: usize, x: usize) -> Result<f64> {
    check_indices(m, &[basepoint, p, q, x])?;
    if p == q {
        return Err(Error::param("coordinate needs p != q"));
    }
    Ok(g_unchecked(m, basepoint, p, q, x))
}

#[inline]
pub(crate) fn weight_unchecked(m: &FiniteMetricSpace, rho: &ModulusCurve, p: usize, q: usize) -> f64 {
    let d = m.dist(p, q);
    rho.value(d) / d
}

/// `h_{p,q}(x) = rho(d(p,q)) / d(p,q) * g_{p,q}(x)`.
pub fn h_pq(m: &FiniteMetricSpace, basepoint: usize, rho: &ModulusCurve, p: usize, q: usize, x: usize) -> Result<f64> {
    check_class(rho, Class::P, DEFAULT_DENSITY)?.into_result()?;
    let g = g_pq(m, basepoint, p, q, x)?;
    Ok(weight_unchecked(m, rho, p, q) * g)
}

/// `N_omega(g) = max_{x != y} |g(y) - g(x)| / omega(d(x,y))` over the finite
/// space; `values[x]` is `g(x)`.
pub fn n_omega(values: &[f64], m: &FiniteMetricSpace, omega: &ModulusCurve) -> Result<f64> {
    if values.len() != m.len() {
        return Err(Error::param(format!("{} values for {} points", values.len(), m.len())));
    }
    let mut sup = 0.0_f64;
    for x in 0..m.len() {
        for y in x + 1..m.len() {
            sup = sup.max((values[y] - values[x]).abs() / omega.value(m.dist(x, y)));
        }
    }
    Ok(sup)
}

/// One of the four dominating bounds on `R_{p,q}(x,y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioBound {
    pub case: &'static str,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioCheck {
    pub ratio: f64,
    pub bounds: Vec<RatioBound>,
}

impl RatioCheck {
    /// `ratio <= 1` and every applicable bound holds, up to `1e-9`.
    pub fn holds(&self) -> bool {
        crate::tolerance::le(self.ratio, 1.0)
            && self.bounds.iter().all(|b| crate::tolerance::le(self.ratio, b.bound))
    }
}

/// `R_{p,q}(x,y) = |h_{p,q}(x) - h_{p,q}(y)| / omega(d(x,y))` together with
/// the bounds that apply to this tuple:
///
/// * always `R <= rho(d(p,q)) / d(p,q)`;
/// * if `d(p,q) <= 1`, `R <= d(p,q) / omega(d(p,q))`;
/// * if `d(x,y) > 1`, `R <= rho(d(x,y)) / d(x,y)`;
/// * if `d(x,y) <= 1`, `R <= d(x,y) / omega(d(x,y))`.
#[allow(clippy::too_many_arguments)]
pub fn ratio_r(
    m: &FiniteMetricSpace,
    basepoint: usize,
    rho: &ModulusCurve,
    omega: &ModulusCurve,
    p: usize,
    q: usize,
    x: usize,
    y: usize,
) -> Result<RatioCheck> {
    check_indices(m, &[basepoint, p, q, x, y])?;
    if p == q || x == y {
        return Err(Error::param("ratio needs p != q and x != y"));
    }
    let w = weight_unchecked(m, rho, p, q);
    let dxy = m.dist(x, y);
    let dpq = m.dist(p, q);
    let ratio = (w * (g_unchecked(m, basepoint, p, q, x) - g_unchecked(m, basepoint, p, q, y))).abs() / omega.value(dxy);
    let mut bounds = vec![RatioBound { case: "i.a", bound: w }];
    if dpq <= 1.0 {
        bounds.push(RatioBound { case: "i.b", bound: dpq / omega.value(dpq) });
    }
    if dxy > 1.0 {
        bounds.push(RatioBound { case: "ii.a", bound: rho.value(dxy) / dxy });
    } else {
        bounds.push(RatioBound { case: "ii.b", bound: dxy / omega.value(dxy) });
    }
    Ok(RatioCheck { ratio, bounds })
}
