//! Comparison slack shared by every certification routine.
//!
//! Values of magnitude at most one are compared with an absolute slack,
//! larger values with the same slack taken relative to their magnitude.

/// Slack for inequality certification.
pub const SLACK: f64 = 1e-9;

/// Absolute stopping width for monotone bisection.
pub const BISECTION_TOL: f64 = 1e-12;

/// Triangle-inequality slack for ingested distance matrices.
pub const TRIANGLE_SLACK: f64 = 1e-9;

#[inline]
pub fn slack_for(v: f64) -> f64 {
    SLACK * v.abs().max(1.0)
}

/// `a <= b` up to [`SLACK`] (scaled by `|b|` when it exceeds one).
#[inline]
pub fn le(a: f64, b: f64) -> bool {
    a <= b + slack_for(b)
}

/// `a >= b` up to [`SLACK`].
#[inline]
pub fn ge(a: f64, b: f64) -> bool {
    a >= b - slack_for(b)
}

#[inline]
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= slack_for(b)
}

/// `a <= b * (1 + SLACK)` for nonnegative `b`: purely relative slack, used
/// for per-pair certification where bounds may be far below one.
#[inline]
pub fn le_rel(a: f64, b: f64) -> bool {
    a <= b + SLACK * b.abs()
}

#[inline]
pub fn ge_rel(a: f64, b: f64) -> bool {
    a >= b - SLACK * b.abs()
}
