use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moduli::{certification_grid, generalized_inverse, Modulus, ModulusCurve, DEFAULT_DENSITY};
use crate::spaces::{Block, BlockSpace, Exponent, LpPointSet};

/// Largest admissible compression factor (exclusive).
pub const R_LIMIT: f64 = 1.0 / 16.0;

/// Truncation depths beyond this are treated as a modulus that never
/// reaches the required levels.
const MAX_DEPTH: u32 = 1000;

/// Smallest `eta` for which the compression constant `(eta - 2) / (16 eta)`
/// of the construction dominates `r`.
pub fn eta_guidance(r: f64) -> f64 {
    2.0 / (1.0 - 16.0 * r)
}

/// `max(100, 2 / (1 - 16 r) + 1)`.
pub fn default_eta(r: f64) -> f64 {
    if r < R_LIMIT {
        100f64.max(eta_guidance(r) + 1.0)
    } else {
        100.0
    }
}

/// One block `psi(k, n)` of the target: it carries `2^{-n} P_m x` for
/// points of the ball `B_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanBlock {
    pub j: usize,
    pub k: i32,
    pub n: u32,
    /// Coordinate truncation `m(k, n)`.
    pub m: usize,
}

/// Everything the map needs besides the points: the annulus range, the
/// truncation depth `n_max`, the table `sigma(-n)` and the block layout.
///
/// Blocks are enumerated row-major over `k in [k_min, k_max + 1]` and
/// `n in 1..=n_max + 1`, so `psi(k, n) = (k - k_min)(n_max + 1) + n - 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpEmbeddingPlan {
    pub eta: f64,
    pub r: f64,
    pub outer: Exponent,
    pub p: Exponent,
    pub dim: usize,
    pub mu: ModulusCurve,
    pub n_max: u32,
    /// `[k_min, k_max + 1]`.
    pub k_range: [i32; 2],
    /// `sigma[n - 1] = sigma(-n)` for `n = 1..=n_max + 1`.
    pub sigma: Vec<f64>,
    pub blocks: Vec<PlanBlock>,
}

/// Plan with the full parameter contract: `eta > 2` and `0 < r < 1/16`.
pub fn make_plan(points: &LpPointSet, mu: &ModulusCurve, eta: f64, r: f64, outer: Exponent) -> Result<LpEmbeddingPlan> {
    if !(r > 0.0 && r < R_LIMIT) {
        return Err(Error::param(format!("r must lie in (0, 1/16), got {r}")));
    }
    build_plan(points, mu, eta, r, outer)
}

/// Plan without the `r < 1/16` requirement. The construction does not
/// depend on `r`; it only enters the certified lower bound.
pub fn build_plan(points: &LpPointSet, mu: &ModulusCurve, eta: f64, r: f64, outer: Exponent) -> Result<LpEmbeddingPlan> {
    if !(eta > 2.0 && eta.is_finite()) {
        return Err(Error::param(format!("eta must exceed 2, got {eta}")));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::param(format!("r must be positive, got {r}")));
    }
    if points.len() < 2 {
        return Err(Error::InvalidPoints("need at least two distinct points".into()));
    }
    check_dominating(mu)?;

    let d_min = points.to_metric().min_distance();
    let mut sigma = vec![generalized_inverse(mu, -1.0)?];
    let n_max = loop {
        let n = sigma.len() as u32;
        let next = generalized_inverse(mu, -f64::from(n + 1))?;
        sigma.push(next);
        if next <= d_min {
            break n;
        }
        if n >= MAX_DEPTH {
            return Err(Error::Domain(format!(
                "sigma(-n) stays above the minimal distance {d_min} for n <= {MAX_DEPTH}"
            )));
        }
    };

    let annuli: Vec<i32> = (0..points.len()).filter_map(|i| points.annulus(i)).collect();
    let k_min = *annuli.iter().min().expect("two distinct points include a nonzero one");
    let k_max = *annuli.iter().max().expect("non-empty");

    let per_k = (n_max + 1) as usize;
    let mut blocks = Vec::with_capacity((k_max + 2 - k_min) as usize * per_k);
    for k in k_min..=k_max + 1 {
        let errors = truncation_errors(points, k);
        for n in 1..=n_max + 1 {
            let target = sigma[(n - 1) as usize] / eta;
            let m = errors.iter().position(|&e| e <= target).unwrap_or(points.dim());
            blocks.push(PlanBlock { j: blocks.len(), k, n, m });
        }
    }
    Ok(LpEmbeddingPlan {
        eta,
        r,
        outer,
        p: points.p(),
        dim: points.dim(),
        mu: mu.clone(),
        n_max,
        k_range: [k_min, k_max + 1],
        sigma,
        blocks,
    })
}

/// `errors[m] = max_{x in B_k} ||x - P_m x||_p` for `m = 0..=dim`.
fn truncation_errors(points: &LpPointSet, k: i32) -> Vec<f64> {
    let mut errors = vec![0.0; points.dim() + 1];
    for i in points.ball_members(k) {
        let x = points.point(i);
        for (m, e) in errors.iter_mut().enumerate() {
            *e = f64::max(*e, points.p().norm(&x[m..]));
        }
    }
    errors
}

/// A dominating modulus must be non-positive and non-decreasing; checked on
/// the certification grid. (`log2(1 - e^{-t})` rounds to 0 for large `t`.)
fn check_dominating(mu: &ModulusCurve) -> Result<()> {
    let grid = certification_grid(DEFAULT_DENSITY);
    let mut prev = f64::NEG_INFINITY;
    for &t in &grid {
        let v = mu.value(t);
        if v.is_nan() || v > 0.0 {
            return Err(Error::curve(format!("dominating modulus must be non-positive, mu({t}) = {v}")));
        }
        if v < prev {
            return Err(Error::curve(format!("dominating modulus must be non-decreasing, drops at t = {t}")));
        }
        prev = v;
    }
    Ok(())
}

impl LpEmbeddingPlan {
    pub fn k_min(&self) -> i32 {
        self.k_range[0]
    }

    pub fn k_max_plus_one(&self) -> i32 {
        self.k_range[1]
    }

    /// `sigma(-n)` for `1 <= n <= n_max + 1`.
    pub fn sigma(&self, n: u32) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.sigma.get(i as usize)).copied()
    }

    /// Block index `psi(k, n)`.
    pub fn psi(&self, k: i32, n: u32) -> Option<usize> {
        if k < self.k_range[0] || k > self.k_range[1] || n == 0 || n > self.n_max + 1 {
            return None;
        }
        Some((k - self.k_range[0]) as usize * (self.n_max + 1) as usize + (n - 1) as usize)
    }

    /// Truncation dimension `m(k, n)`.
    pub fn m(&self, k: i32, n: u32) -> Option<usize> {
        self.psi(k, n).map(|j| self.blocks[j].m)
    }

    pub fn block_space(&self) -> BlockSpace {
        BlockSpace::new(self.outer, self.blocks.iter().map(|b| Block { p: self.p, dim: b.m }).collect())
    }
}
