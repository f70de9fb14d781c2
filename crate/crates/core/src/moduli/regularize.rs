//! Monotone regularization of `P` and `Omega` curves.
//!
//! For `rho` in `P`, write `eps(t) = rho(t) / t`. The regularized curve is
//! `rho*(t) = t * eps*(t)` where `eps` is first replaced by its upper
//! envelope `t -> sup_{s >= t} eps(s)` and then
//! `eps*(t) = (1/t) sup_{s <= t} s * eps(s)`.
//!
//! `Omega` curves are handled through the reciprocal conjugation
//! `f -> 1 / f(1 / t)`, which maps `Omega` into `P` and back.

use super::class::{check_class, Class};
use super::curve::{certification_grid, Extension, Modulus, ModulusCurve, DEFAULT_DENSITY};
use crate::error::{Error, Result};

/// Grid used when an analytic curve is sampled for regularization.
pub fn regularization_grid() -> Vec<f64> {
    certification_grid(DEFAULT_DENSITY)
}

pub fn regularize_rho(rho: &ModulusCurve) -> Result<ModulusCurve> {
    check_class(rho, Class::P, DEFAULT_DENSITY)?.into_result()?;
    let sampled = rho.to_piecewise_linear(&regularization_grid())?;
    let tail_alpha = sampled
        .tail()
        .power_exponent(sampled.last())
        .filter(|a| *a < 1.0)
        .or_else(|| (sampled.last().1 == 0.0).then_some(0.0))
        .ok_or_else(|| Error::curve("tail of a P curve must be a power with exponent < 1"))?;

    let points = sampled.points();
    let n = points.len();
    // upper envelope of eps, scanned from the right; the tail's eps is
    // non-increasing so the last node already dominates it
    let mut envelope = vec![0.0; n];
    let mut running = f64::NEG_INFINITY;
    for i in (0..n).rev() {
        let (t, v) = points[i];
        running = running.max(v / t);
        envelope[i] = running;
    }
    let mut out = Vec::with_capacity(n);
    let mut best = 0.0_f64;
    for (i, &(t, _)) in points.iter().enumerate() {
        best = best.max(t * envelope[i]);
        out.push((t, best));
    }
    ModulusCurve::piecewise_linear(out, Extension::Power { alpha: 1.0 }, Extension::Power { alpha: tail_alpha })
}

pub fn regularize_omega(omega: &ModulusCurve) -> Result<ModulusCurve> {
    check_class(omega, Class::Omega, DEFAULT_DENSITY)?.into_result()?;
    let rho = reciprocal_conjugate(omega)?;
    let rho_star = regularize_rho(&rho)?;
    reciprocal_conjugate(&rho_star)
}

/// The curve `t -> 1 / f(1 / t)` (with value 0 at 0), as a piecewise-linear
/// curve on the reciprocals of the regularization grid and of the curve's
/// own breakpoints. A segment linear in `t` is not linear in `1 / t`, so
/// piecewise-linear inputs are resampled too; every node is then exact.
pub fn reciprocal_conjugate(curve: &ModulusCurve) -> Result<ModulusCurve> {
    if let Some(pl) = curve.as_piecewise_linear() {
        let (t0, v0) = pl.first();
        if t0 == 0.0 && v0 != 0.0 {
            return Err(Error::curve("conjugation needs f(0) = 0"));
        }
    }
    let pl = curve.to_piecewise_linear(&regularization_grid())?;
    if let Some(&(t, v)) = pl.points().iter().find(|p| !(p.1 > 0.0)) {
        return Err(Error::curve(format!("conjugation needs positive values, f({t}) = {v}")));
    }
    let head_alpha = pl
        .tail()
        .power_exponent(pl.last())
        .ok_or_else(|| Error::curve("tail is not a power law and cannot be conjugated"))?;
    let tail_alpha = pl
        .head()
        .power_exponent(pl.first())
        .ok_or_else(|| Error::curve("head is not a power law and cannot be conjugated"))?;
    let points: Vec<(f64, f64)> = pl.points().iter().rev().map(|&(t, v)| (1.0 / t, 1.0 / v)).collect();
    ModulusCurve::piecewise_linear(
        points,
        Extension::Power { alpha: head_alpha },
        Extension::Power { alpha: tail_alpha },
    )
}

/// Evaluate `t -> 1 / f(1 / t)` directly, for cross-checks.
pub fn conjugate_value<M: Modulus + ?Sized>(f: &M, t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        1.0 / f.value(1.0 / t)
    }
}
