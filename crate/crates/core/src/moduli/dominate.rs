use super::class::{check_class, Class};
use super::curve::{Modulus, ModulusCurve, DEFAULT_DENSITY};
use crate::error::{Error, Result};
use crate::tolerance::BISECTION_TOL;

/// Exponential domination of a `Phi` curve.
///
/// Returns `mu = log2(lambda)` with
/// `lambda(t) = sup_{s <= t} max { phi(s), 1 - e^{-s} }`, so that `mu` is
/// continuous, non-decreasing, tends to `-inf` at `0+` and to `0-` at
/// infinity, and `phi(t) <= 2^{mu(t)}` for every `t > 0`.
pub fn exp_dominate(phi: &ModulusCurve) -> Result<ModulusCurve> {
    check_class(phi, Class::Phi, DEFAULT_DENSITY)?.into_result()?;
    Ok(ModulusCurve::log2_dominated(phi.clone()))
}

/// `sigma(y) = inf { x > 0 : mu(x) >= y }` for a non-decreasing `mu` and
/// `y < 0`, by bisection to an absolute width of `1e-12`.
///
/// The returned abscissa always satisfies `mu(sigma) >= y`. When no
/// abscissa in `(0, 1e300]` reaches `y` the empty infimum is reported as
/// `f64::INFINITY`.
pub fn generalized_inverse<M: Modulus + ?Sized>(mu: &M, y: f64) -> Result<f64> {
    if !(y < 0.0) {
        return Err(Error::Domain(format!("generalized inverse needs y < 0, got {y}")));
    }
    let reaches = |x: f64| mu.value(x) >= y;

    let mut hi = 1.0_f64;
    while !reaches(hi) {
        hi *= 2.0;
        if hi > 1e300 {
            return Ok(f64::INFINITY);
        }
    }
    let mut lo = hi * 0.5;
    while reaches(lo) {
        hi = lo;
        lo *= 0.5;
        if lo < f64::MIN_POSITIVE {
            return Ok(hi);
        }
    }
    // invariant: mu(lo) < y <= mu(hi)
    while hi - lo > BISECTION_TOL {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if reaches(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
