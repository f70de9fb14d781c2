//! Grid certification of membership in the modulus classes.
//!
//! * `Phi`: continuous, values in `[0, 1)`, zero at 0 and positive after.
//! * `P`: continuous, `rho(t) = t` on `[0, 1]`, `rho(t) <= t` after, and
//!   `rho(t) / t -> 0` at infinity.
//! * `Omega`: continuous, `omega(0) = 0`, `t <= omega(t)` on `[0, 1]`,
//!   `omega(t) = t` after, and `omega(t) / t -> inf` at zero.
//!
//! Pointwise clauses are checked on a geometric grid; the limit clauses
//! are read off the analytic head/tail descriptors of the curve.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::curve::{certification_grid, merge_grids, Extension, Family, Modulus, ModulusCurve};
use crate::error::{Error, Result};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Class {
    Phi,
    P,
    Omega,
}

impl Class {
    pub fn name(self) -> &'static str {
        match self {
            Class::Phi => "Phi",
            Class::P => "P",
            Class::Omega => "Omega",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Phi" | "phi" | "Φ" => Ok(Class::Phi),
            "P" | "p" | "𝒫" => Ok(Class::P),
            "Omega" | "omega" | "Ω" => Ok(Class::Omega),
            other => Err(Error::UnknownClass(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// Abscissa of the failure; `0` for limits at zero, `inf` for limits at
    /// infinity.
    pub t: f64,
    pub clause: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassReport {
    pub class: Class,
    pub grid: Vec<f64>,
    pub pass: bool,
    pub first_violation: Option<Violation>,
}

impl ClassReport {
    pub fn into_result(self) -> Result<()> {
        match self.first_violation {
            None => Ok(()),
            Some(v) => Err(Error::ClassViolation { class: self.class.name(), clause: v.clause, t: v.t }),
        }
    }
}

/// The certification grid plus every breakpoint of a piecewise-linear curve.
pub(crate) fn grid_for(curve: &ModulusCurve, density: usize) -> Vec<f64> {
    let own: Vec<f64> = curve
        .as_piecewise_linear()
        .map(|pl| pl.points().iter().map(|p| p.0).collect())
        .unwrap_or_default();
    merge_grids(&certification_grid(density), &own)
}

pub fn check_class(curve: &ModulusCurve, class: Class, density: usize) -> Result<ClassReport> {
    if density < 2 {
        return Err(Error::param(format!("grid density must be at least 2, got {density}")));
    }
    let grid = grid_for(curve, density);
    let first_violation = match class {
        Class::Phi => first_phi_violation(curve, &grid),
        Class::P => first_p_violation(curve, &grid),
        Class::Omega => first_omega_violation(curve, &grid),
    };
    Ok(ClassReport { class, grid, pass: first_violation.is_none(), first_violation })
}

fn violation(t: f64, clause: &'static str) -> Option<Violation> {
    Some(Violation { t, clause })
}

fn first_phi_violation(c: &ModulusCurve, grid: &[f64]) -> Option<Violation> {
    if c.value(0.0) != 0.0 {
        return violation(0.0, "phi(0) = 0");
    }
    // 1 - e^{-t} rounds to 1 past t ~ 37 but is < 1 for every finite t
    let below_one_exact = matches!(c.family(), Family::ExpFloor);
    for &t in grid {
        let v = c.value(t);
        if !(v > 0.0) {
            return violation(t, "phi(t) > 0");
        }
        if !(v < 1.0) && !below_one_exact {
            return violation(t, "phi(t) < 1");
        }
    }
    let inf = f64::INFINITY;
    match c.family() {
        Family::ExpFloor => None,
        Family::PowerRho { .. } | Family::PowerOmega { .. } => violation(inf, "phi(t) < 1"),
        Family::Log2Dominated(_) => violation(inf, "phi(t) > 0"),
        Family::PiecewiseLinear(pl) => {
            let (tl, vl) = pl.last();
            match pl.tail().power_exponent((tl, vl)) {
                Some(0.0) => None,
                _ => match pl.tail() {
                    Extension::Affine { slope } if slope < 0.0 => violation(inf, "phi(t) > 0"),
                    Extension::Power { .. } if vl == 0.0 => violation(inf, "phi(t) > 0"),
                    _ => violation(inf, "phi(t) < 1"),
                },
            }
        }
    }
}

const RHO_LIMIT: &str = "lim rho(t)/t = 0 at infinity";

fn first_p_violation(c: &ModulusCurve, grid: &[f64]) -> Option<Violation> {
    if c.value(0.0) != 0.0 {
        return violation(0.0, "rho(t) = t on [0,1]");
    }
    for &t in grid {
        let v = c.value(t);
        if !(v >= 0.0) {
            return violation(t, "rho(t) >= 0");
        }
        if t <= 1.0 {
            if !tolerance::approx_eq(v, t) {
                return violation(t, "rho(t) = t on [0,1]");
            }
        } else if !tolerance::le(v, t) {
            return violation(t, "rho(t) <= t on [1,inf)");
        }
    }
    let inf = f64::INFINITY;
    match c.family() {
        Family::PowerRho { alpha } => (*alpha >= 1.0).then_some(Violation { t: inf, clause: RHO_LIMIT }),
        Family::ExpFloor => None,
        Family::PowerOmega { .. } | Family::Log2Dominated(_) => violation(inf, RHO_LIMIT),
        Family::PiecewiseLinear(pl) => {
            let (t0, v0) = pl.first();
            if t0 > 0.0 && pl.head().power_exponent((t0, v0)) != Some(1.0) {
                return violation(0.0, "rho(t) = t on [0,1]");
            }
            let last = pl.last();
            match pl.tail() {
                Extension::Affine { slope } if slope < 0.0 => violation(inf, "rho(t) >= 0"),
                Extension::Affine { slope } if slope > 0.0 => violation(inf, RHO_LIMIT),
                Extension::Affine { .. } => None,
                Extension::Power { alpha } if alpha < 1.0 || last.1 == 0.0 => None,
                Extension::Power { .. } => violation(inf, RHO_LIMIT),
            }
        }
    }
}

const OMEGA_LIMIT: &str = "lim omega(t)/t = inf at 0";
const OMEGA_TAIL: &str = "omega(t) = t on [1,inf)";

fn first_omega_violation(c: &ModulusCurve, grid: &[f64]) -> Option<Violation> {
    if c.value(0.0) != 0.0 {
        return violation(0.0, "omega(0) = 0");
    }
    for &t in grid {
        let v = c.value(t);
        if !(v >= 0.0) {
            return violation(t, "omega(t) >= 0");
        }
        if t <= 1.0 {
            if !tolerance::ge(v, t) {
                return violation(t, "t <= omega(t) on [0,1]");
            }
        } else if !tolerance::approx_eq(v, t) {
            return violation(t, OMEGA_TAIL);
        }
    }
    let inf = f64::INFINITY;
    match c.family() {
        Family::PowerOmega { alpha } => (*alpha >= 1.0).then_some(Violation { t: 0.0, clause: OMEGA_LIMIT }),
        Family::PowerRho { .. } | Family::ExpFloor | Family::Log2Dominated(_) => violation(0.0, OMEGA_LIMIT),
        Family::PiecewiseLinear(pl) => {
            let (t0, v0) = pl.first();
            let head_ok = t0 > 0.0
                && v0 > 0.0
                && matches!(pl.head(), Extension::Power { alpha } if alpha > 0.0 && alpha < 1.0);
            if !head_ok {
                return violation(0.0, OMEGA_LIMIT);
            }
            let last = pl.last();
            let tail_is_identity =
                pl.tail().power_exponent(last) == Some(1.0) && tolerance::approx_eq(last.1, last.0);
            (!tail_is_identity).then_some(Violation { t: inf, clause: OMEGA_TAIL })
        }
    }
}

/// Which monotone regularity a curve should have: non-decreasing with
/// `t -> f(t)/t` non-increasing, plus membership in `class`.
pub fn check_regular(curve: &ModulusCurve, class: Class) -> Result<()> {
    check_class(curve, class, super::curve::DEFAULT_DENSITY)?.into_result()?;
    let grid = grid_for(curve, super::curve::DEFAULT_DENSITY);
    let name = match class {
        Class::P => "rho",
        Class::Omega => "omega",
        Class::Phi => "phi",
    };
    for w in grid.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (curve.value(a), curve.value(b));
        if !tolerance::le(fa, fb) {
            return Err(Error::NotRegularized(format!("{name} decreases between t = {a} and t = {b}")));
        }
        if !tolerance::le(fb / b, fa / a) {
            return Err(Error::NotRegularized(format!("{name}(t)/t increases between t = {a} and t = {b}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::curve::DEFAULT_DENSITY;

    fn verdict(c: &ModulusCurve, class: Class) -> ClassReport {
        check_class(c, class, DEFAULT_DENSITY).unwrap()
    }

    #[test]
    fn power_omega_is_in_omega() {
        let w = ModulusCurve::power_omega(0.5).unwrap();
        assert!(verdict(&w, Class::Omega).pass);
        assert!(!verdict(&w, Class::P).pass);
        assert!(!verdict(&w, Class::Phi).pass);
    }

    #[test]
    fn exp_floor_is_in_phi() {
        let r = verdict(&ModulusCurve::exp_floor(), Class::Phi);
        assert!(r.pass, "{:?}", r.first_violation);
    }

    #[test]
    fn identity_fails_p_through_limit_clause() {
        let r = verdict(&ModulusCurve::power_rho(1.0).unwrap(), Class::P);
        assert!(!r.pass);
        let v = r.first_violation.unwrap();
        assert_eq!(v.clause, RHO_LIMIT);
        assert!(v.t.is_infinite());
    }

    #[test]
    fn identity_fails_omega_through_limit_at_zero() {
        let r = verdict(&ModulusCurve::power_omega(1.0).unwrap(), Class::Omega);
        assert_eq!(r.first_violation.unwrap().clause, OMEGA_LIMIT);
    }

    #[test]
    fn power_rho_is_in_p() {
        for a in [0.1, 0.5, 0.9] {
            assert!(verdict(&ModulusCurve::power_rho(a).unwrap(), Class::P).pass);
        }
    }

    #[test]
    fn pl_with_constant_tail_is_in_p_and_phi_checks_cap() {
        let rho = ModulusCurve::piecewise_linear(
            vec![(0.0, 0.0), (1.0, 1.0), (1.5, 0.5)],
            Extension::Power { alpha: 1.0 },
            Extension::Affine { slope: 0.0 },
        )
        .unwrap();
        assert!(verdict(&rho, Class::P).pass);
        // reaches 1 at t = 1
        let r = verdict(&rho, Class::Phi);
        assert_eq!(r.first_violation.unwrap().clause, "phi(t) < 1");

        let phi = ModulusCurve::piecewise_linear(
            vec![(0.0, 0.0), (0.5, 0.9), (3.0, 0.2)],
            Extension::Power { alpha: 1.0 },
            Extension::Affine { slope: 0.0 },
        )
        .unwrap();
        assert!(verdict(&phi, Class::Phi).pass);
    }

    #[test]
    fn growing_tail_fails_phi() {
        let phi = ModulusCurve::piecewise_linear(
            vec![(0.0, 0.0), (1.0, 0.5)],
            Extension::Power { alpha: 1.0 },
            Extension::Affine { slope: 1e-9 },
        )
        .unwrap();
        let r = verdict(&phi, Class::Phi);
        assert!(!r.pass);
    }

    #[test]
    fn bad_density_and_unknown_class() {
        assert!(check_class(&ModulusCurve::exp_floor(), Class::Phi, 1).is_err());
        assert!(matches!("Psi".parse::<Class>(), Err(Error::UnknownClass(_))));
        assert_eq!("Omega".parse::<Class>().unwrap(), Class::Omega);
    }

    #[test]
    fn regularity_of_power_moduli() {
        check_regular(&ModulusCurve::power_rho(0.5).unwrap(), Class::P).unwrap();
        check_regular(&ModulusCurve::power_omega(0.5).unwrap(), Class::Omega).unwrap();
    }

    #[test]
    fn dip_is_not_regular() {
        let rho = ModulusCurve::piecewise_linear(
            vec![(0.0, 0.0), (1.0, 1.0), (1.5, 0.5)],
            Extension::Power { alpha: 1.0 },
            Extension::Affine { slope: 0.0 },
        )
        .unwrap();
        assert!(matches!(check_regular(&rho, Class::P), Err(Error::NotRegularized(_))));
    }
}
