use serde::{Deserialize, Serialize};

use super::Pairing;
use crate::error::Result;
use crate::spaces::FiniteMetricSpace;

/// Empirical compression and expansion moduli of a map between finite
/// spaces, evaluated at every realized source distance `t_i`:
///
/// * `rho_hat(t_i) = min { d_Y : d_X >= t_i }`
/// * `omega_hat(t_i) = max { d_Y : d_X <= t_i }`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModulusProfile {
    pub t: Vec<f64>,
    pub rho_hat: Vec<f64>,
    pub omega_hat: Vec<f64>,
}

pub fn measure_moduli(x: &FiniteMetricSpace, image: &FiniteMetricSpace, pairing: &Pairing) -> Result<ModulusProfile> {
    pairing.validate(x, image)?;
    let mut pairs = pairing.distance_pairs(x, image);
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut t: Vec<f64> = Vec::new();
    let mut lo: Vec<f64> = Vec::new();
    let mut hi: Vec<f64> = Vec::new();
    for (dx, dy) in pairs {
        if t.last() == Some(&dx) {
            let k = t.len() - 1;
            lo[k] = lo[k].min(dy);
            hi[k] = hi[k].max(dy);
        } else {
            t.push(dx);
            lo.push(dy);
            hi.push(dy);
        }
    }
    let mut rho_hat = lo;
    for k in (0..rho_hat.len().saturating_sub(1)).rev() {
        rho_hat[k] = rho_hat[k].min(rho_hat[k + 1]);
    }
    let mut omega_hat = hi;
    for k in 1..omega_hat.len() {
        omega_hat[k] = omega_hat[k].max(omega_hat[k - 1]);
    }
    Ok(ModulusProfile { t, rho_hat, omega_hat })
}

impl ModulusProfile {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// `inf { d_Y : d_X >= t }`, `inf` when no pair qualifies. Constant on
    /// each interval `(t_{i-1}, t_i]`.
    pub fn rho_at(&self, t: f64) -> f64 {
        let k = self.t.partition_point(|&s| s < t);
        self.rho_hat.get(k).copied().unwrap_or(f64::INFINITY)
    }

    /// `sup { d_Y : d_X <= t }`, `0` when no pair qualifies. Constant on each
    /// interval `[t_i, t_{i+1})`.
    pub fn omega_at(&self, t: f64) -> f64 {
        let k = self.t.partition_point(|&s| s <= t);
        if k == 0 {
            0.0
        } else {
            self.omega_hat[k - 1]
        }
    }

    /// Both curves non-decreasing, and `rho_hat(t_i) <= omega_hat(t_i)`.
    pub fn is_monotone(&self) -> bool {
        let up = |v: &[f64]| v.windows(2).all(|w| w[0] <= w[1]);
        up(&self.rho_hat)
            && up(&self.omega_hat)
            && self.rho_hat.iter().zip(&self.omega_hat).all(|(r, w)| r <= w)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,rho_hat,omega_hat\n");
        for k in 0..self.t.len() {
            out.push_str(&format!("{},{},{}\n", self.t[k], self.rho_hat[k], self.omega_hat[k]));
        }
        out
    }
}
