use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::spec::CurveSpec;

/// Anything that can be evaluated as a one-dimensional modulus.
///
/// Closures are accepted so that callers can hand in moduli that have no
/// serialized form, e.g. `|t| (t / (1.0 + t)).log2()`.
pub trait Modulus {
    fn value(&self, t: f64) -> f64;
}

impl<F: Fn(f64) -> f64> Modulus for F {
    fn value(&self, t: f64) -> f64 {
        self(t)
    }
}

/// How a piecewise-linear curve continues outside its breakpoints.
///
/// Anchored at the nearest breakpoint `(t0, v0)`:
/// `Power { alpha }` evaluates to `v0 * (t / t0)^alpha`,
/// `Affine { slope }` to `v0 + slope * (t - t0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extension {
    Power { alpha: f64 },
    Affine { slope: f64 },
}

impl Extension {
    fn eval(self, (t0, v0): (f64, f64), t: f64) -> f64 {
        match self {
            Extension::Power { alpha } => {
                if alpha == 0.0 {
                    v0
                } else if t == 0.0 {
                    0.0
                } else {
                    v0 * (t / t0).powf(alpha)
                }
            }
            Extension::Affine { slope } => v0 + slope * (t - t0),
        }
    }

    /// The exponent `alpha` such that this extension is `c * t^alpha`, if any.
    pub(crate) fn power_exponent(self, (t0, v0): (f64, f64)) -> Option<f64> {
        match self {
            Extension::Power { alpha } => Some(alpha),
            Extension::Affine { slope: 0.0 } => Some(0.0),
            Extension::Affine { slope } => {
                let through_origin = (v0 - slope * t0).abs() <= 1e-12 * v0.abs().max(1.0);
                through_origin.then_some(1.0)
            }
        }
    }

    fn validate(self, what: &str) -> Result<()> {
        match self {
            Extension::Power { alpha } if !(alpha.is_finite() && alpha >= 0.0) => {
                Err(Error::curve(format!("{what} exponent must be finite and >= 0, got {alpha}")))
            }
            Extension::Affine { slope } if !slope.is_finite() => {
                Err(Error::curve(format!("{what} slope must be finite")))
            }
            _ => Ok(()),
        }
    }
}

/// A piecewise-linear curve on strictly increasing breakpoints, extended by
/// a head descriptor below the first breakpoint and a tail descriptor above
/// the last one.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    points: Vec<(f64, f64)>,
    head: Extension,
    tail: Extension,
    /// `prefix_max[i] = max(v_0..=v_i)`
    prefix_max: Vec<f64>,
}

impl PiecewiseLinear {
    pub fn new(points: Vec<(f64, f64)>, head: Extension, tail: Extension) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::curve("piecewise-linear curve needs at least one breakpoint"));
        }
        for &(t, v) in &points {
            if !(t.is_finite() && v.is_finite()) {
                return Err(Error::curve("breakpoints must be finite"));
            }
            if t < 0.0 {
                return Err(Error::curve(format!("breakpoint abscissa {t} is negative")));
            }
        }
        if let Some(w) = points.windows(2).find(|w| w[1].0 <= w[0].0) {
            return Err(Error::curve(format!(
                "breakpoints must be strictly increasing in t ({} then {})",
                w[0].0, w[1].0
            )));
        }
        head.validate("head")?;
        tail.validate("tail")?;
        let last = *points.last().unwrap();
        if matches!(tail, Extension::Power { alpha } if alpha > 0.0) && last.0 == 0.0 {
            return Err(Error::curve("a power tail needs a last breakpoint with t > 0"));
        }
        let mut prefix_max = Vec::with_capacity(points.len());
        let mut m = f64::NEG_INFINITY;
        for &(_, v) in &points {
            m = m.max(v);
            prefix_max.push(m);
        }
        Ok(Self { points, head, tail, prefix_max })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn head(&self) -> Extension {
        self.head
    }

    pub fn tail(&self) -> Extension {
        self.tail
    }

    pub fn first(&self) -> (f64, f64) {
        self.points[0]
    }

    pub fn last(&self) -> (f64, f64) {
        *self.points.last().unwrap()
    }

    /// Index of the last breakpoint with abscissa `<= t`, if any.
    fn segment(&self, t: f64) -> Option<usize> {
        let idx = self.points.partition_point(|&(x, _)| x <= t);
        idx.checked_sub(1)
    }

    pub fn value(&self, t: f64) -> f64 {
        let first = self.first();
        let last = self.last();
        if t < first.0 {
            return self.head.eval(first, t);
        }
        if t >= last.0 {
            return if t == last.0 { last.1 } else { self.tail.eval(last, t) };
        }
        let i = self.segment(t).expect("t lies inside the breakpoint range");
        let (t0, v0) = self.points[i];
        let (t1, v1) = self.points[i + 1];
        let w = (t - t0) / (t1 - t0);
        v0 + w * (v1 - v0)
    }

    /// `sup { value(s) : 0 <= s <= t }` for head/tail extensions that are
    /// monotone (all validated extensions are).
    fn running_max(&self, t: f64) -> f64 {
        let here = self.value(t);
        let head_max = if self.first().0 > 0.0 {
            // monotone head: its sup over [0, min(t, t0)] is at one of the ends
            let end = t.min(self.first().0);
            self.head.eval(self.first(), 0.0).max(self.value(end))
        } else {
            f64::NEG_INFINITY
        };
        match self.segment(t) {
            Some(i) => self.prefix_max[i].max(here).max(head_max),
            None => here.max(head_max),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `min { t, t^alpha }`
    PowerRho { alpha: f64 },
    /// `max { t, t^alpha }`
    PowerOmega { alpha: f64 },
    /// `1 - e^{-t}`
    ExpFloor,
    /// `log2 sup_{s <= t} max { base(s), 1 - e^{-s} }`
    Log2Dominated(Box<ModulusCurve>),
    PiecewiseLinear(PiecewiseLinear),
}

/// An evaluable modulus function on `[0, inf)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CurveSpec", into = "CurveSpec")]
pub struct ModulusCurve {
    family: Family,
}

fn check_alpha(alpha: f64) -> Result<f64> {
    if alpha.is_finite() && alpha > 0.0 && alpha <= 1.0 {
        Ok(alpha)
    } else {
        Err(Error::curve(format!("exponent must lie in (0, 1], got {alpha}")))
    }
}

impl ModulusCurve {
    pub fn power_rho(alpha: f64) -> Result<Self> {
        Ok(Self { family: Family::PowerRho { alpha: check_alpha(alpha)? } })
    }

    pub fn power_omega(alpha: f64) -> Result<Self> {
        Ok(Self { family: Family::PowerOmega { alpha: check_alpha(alpha)? } })
    }

    pub fn exp_floor() -> Self {
        Self { family: Family::ExpFloor }
    }

    pub fn piecewise_linear(points: Vec<(f64, f64)>, head: Extension, tail: Extension) -> Result<Self> {
        Ok(Self { family: Family::PiecewiseLinear(PiecewiseLinear::new(points, head, tail)?) })
    }

    pub(crate) fn log2_dominated(base: ModulusCurve) -> Self {
        Self { family: Family::Log2Dominated(Box::new(base)) }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn as_piecewise_linear(&self) -> Option<&PiecewiseLinear> {
        match &self.family {
            Family::PiecewiseLinear(pl) => Some(pl),
            _ => None,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            Family::PowerRho { .. } => "power_rho",
            Family::PowerOmega { .. } => "power_omega",
            Family::ExpFloor => "exp_floor",
            Family::Log2Dominated(_) => "log2_dominated",
            Family::PiecewiseLinear(_) => "pl",
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::NegativeArgument(t));
        }
        Ok(self.value_unchecked(t))
    }

    fn value_unchecked(&self, t: f64) -> f64 {
        match &self.family {
            Family::PowerRho { alpha } => t.min(t.powf(*alpha)),
            Family::PowerOmega { alpha } => t.max(t.powf(*alpha)),
            Family::ExpFloor => -(-t).exp_m1(),
            Family::Log2Dominated(base) => {
                if t == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    base.running_max(t).max(-(-t).exp_m1()).log2()
                }
            }
            Family::PiecewiseLinear(pl) => pl.value(t),
        }
    }

    /// `sup { self(s) : 0 <= s <= t }`.
    pub fn running_max(&self, t: f64) -> f64 {
        match &self.family {
            Family::PowerRho { .. }
            | Family::PowerOmega { .. }
            | Family::ExpFloor
            | Family::Log2Dominated(_) => self.value_unchecked(t),
            Family::PiecewiseLinear(pl) => pl.running_max(t),
        }
    }

    /// Behaviour near zero as an extension anchored at `t0`, for families
    /// that have one.
    pub(crate) fn head_extension(&self) -> Option<Extension> {
        match &self.family {
            Family::PowerRho { .. } | Family::ExpFloor => Some(Extension::Power { alpha: 1.0 }),
            Family::PowerOmega { alpha } => Some(Extension::Power { alpha: *alpha }),
            Family::Log2Dominated(_) => None,
            Family::PiecewiseLinear(pl) => {
                let (t0, v0) = pl.first();
                if t0 > 0.0 {
                    Some(pl.head())
                } else if v0 == 0.0 {
                    // linear first segment through the origin
                    Some(Extension::Power { alpha: 1.0 })
                } else {
                    Some(Extension::Power { alpha: 0.0 })
                }
            }
        }
    }

    /// Behaviour at infinity as an extension anchored at the last sample.
    pub(crate) fn tail_extension(&self) -> Option<Extension> {
        match &self.family {
            Family::PowerRho { alpha } => Some(Extension::Power { alpha: *alpha }),
            Family::PowerOmega { .. } => Some(Extension::Power { alpha: 1.0 }),
            Family::ExpFloor => Some(Extension::Power { alpha: 0.0 }),
            Family::Log2Dominated(_) => None,
            Family::PiecewiseLinear(pl) => Some(pl.tail()),
        }
    }

    /// Resample onto `grid` (merged with this curve's own breakpoints when
    /// it is piecewise linear). Only strictly positive abscissae are kept;
    /// the head and tail descriptors carry the analytic behaviour outside.
    pub fn to_piecewise_linear(&self, grid: &[f64]) -> Result<PiecewiseLinear> {
        let head = self
            .head_extension()
            .ok_or_else(|| Error::curve(format!("{} has no piecewise-linear form", self.family_name())))?;
        let tail = self.tail_extension().expect("head and tail exist together");
        let own: Vec<f64> = self
            .as_piecewise_linear()
            .map(|pl| pl.points().iter().map(|p| p.0).filter(|&t| t > 0.0).collect())
            .unwrap_or_default();
        let abscissae = merge_grids(&own, grid);
        if abscissae.is_empty() {
            return Err(Error::curve("resampling grid has no positive abscissa"));
        }
        let points = abscissae.iter().map(|&t| (t, self.value_unchecked(t))).collect();
        PiecewiseLinear::new(points, head, tail)
    }
}

impl Modulus for ModulusCurve {
    fn value(&self, t: f64) -> f64 {
        self.value_unchecked(t)
    }
}

/// Sorted union of `primary` and `extra`, dropping entries of `extra` that
/// sit within a relative 1e-9 of an entry of `primary`.
pub(crate) fn merge_grids(primary: &[f64], extra: &[f64]) -> Vec<f64> {
    let mut base: Vec<f64> = primary.iter().copied().filter(|t| *t > 0.0 && t.is_finite()).collect();
    base.sort_by(f64::total_cmp);
    base.dedup();
    let near = |t: f64| {
        let i = base.partition_point(|&x| x < t);
        let close = |x: f64| (x - t).abs() <= 1e-9 * t.abs();
        (i < base.len() && close(base[i])) || (i > 0 && close(base[i - 1]))
    };
    let mut out = base.clone();
    out.extend(extra.iter().copied().filter(|&t| t > 0.0 && t.is_finite() && !near(t)));
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// `count` geometrically spaced points on `[lo, hi]`.
pub fn geometric_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && count >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == count - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (count - 1) as f64).exp()
            }
        })
        .collect()
}

pub const GRID_LO: f64 = 1e-6;
pub const GRID_HI: f64 = 1e6;
/// 100 points per decade over `[1e-6, 1e6]`.
pub const DEFAULT_DENSITY: usize = 1201;

/// Geometric grid on `[1e-6, 1e6]` that always contains `t = 1`.
pub fn certification_grid(density: usize) -> Vec<f64> {
    let mut g = geometric_grid(GRID_LO, GRID_HI, density.max(2));
    g.push(1.0);
    g.sort_by(f64::total_cmp);
    g.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
    if !g.contains(&1.0) {
        // the dedup may have kept a neighbour of 1 instead
        let i = g.partition_point(|&x| x < 1.0);
        if i < g.len() && (g[i] - 1.0).abs() <= 1e-12 {
            g[i] = 1.0;
        } else if i > 0 {
            g[i - 1] = 1.0;
        }
    }
    g
}
