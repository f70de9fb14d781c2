//! Modulus functions: evaluation, class certification, exponential
//! domination, generalized inverses and monotone regularization.

mod class;
mod curve;
mod dominate;
mod regularize;
mod spec;

pub use class::{check_class, check_regular, Class, ClassReport, Violation};
pub use curve::{
    certification_grid, geometric_grid, Extension, Family, Modulus, ModulusCurve, PiecewiseLinear,
    DEFAULT_DENSITY, GRID_HI, GRID_LO,
};
pub use dominate::{exp_dominate, generalized_inverse};
pub use regularize::{conjugate_value, reciprocal_conjugate, regularization_grid, regularize_omega, regularize_rho};
pub use spec::{CurveSpec, ExtensionSpec};
