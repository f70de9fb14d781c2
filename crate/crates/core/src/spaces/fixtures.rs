//! Deterministic, seeded generators for test and CLI fixtures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::exponent::Exponent;
use super::metric::{validate_metric, FiniteMetricSpace};
use super::points::LpPointSet;
use crate::error::{Error, Result};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Points of the real line with the absolute-value metric.
pub fn line(positions: &[f64]) -> Result<FiniteMetricSpace> {
    let rows: Vec<Vec<f64>> =
        positions.iter().map(|a| positions.iter().map(|b| (a - b).abs()).collect()).collect();
    validate_metric(&rows)
}

/// A Gaussian direction normalized to the unit sphere of `l_p^dim`.
fn unit_direction(rng: &mut impl Rng, p: Exponent, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = p.norm(&v);
        if n > 1e-12 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Samples of the compact set `{ sum_{n<=N} a_n t_n e_n : ||t||_p <= 1 }`.
///
/// The output holds the origin (index 0, the basepoint), the extreme points
/// `+a_n e_n` and `-a_n e_n` for every `n`, then `count` random points.
pub fn kalton_compact_sample(p: Exponent, weights: &[f64], count: usize, seed: u64) -> Result<LpPointSet> {
    let n = weights.len();
    if n == 0 {
        return Err(Error::param("weight list must be non-empty"));
    }
    if weights.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
        return Err(Error::param("weights must be positive"));
    }
    if weights.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::param("weights must be non-increasing"));
    }
    let total: f64 = weights.iter().sum();
    if total > 1.0 + 1e-12 {
        return Err(Error::param(format!("weights must sum to at most 1, got {total}")));
    }
    let mut pts = vec![vec![0.0; n]];
    for (i, &a) in weights.iter().enumerate() {
        for sign in [1.0, -1.0] {
            let mut e = vec![0.0; n];
            e[i] = sign * a;
            pts.push(e);
        }
    }
    let mut rng = rng(seed);
    for _ in 0..count {
        let dir = unit_direction(&mut rng, p, n);
        let radius: f64 = rng.gen::<f64>().powf(1.0 / n as f64);
        pts.push(dir.iter().zip(weights).map(|(t, a)| a * radius * t).collect());
    }
    LpPointSet::new(p, pts, Some(0))
}

/// Geometric weights `a_n = ratio^n`, `n = 1..=len`.
pub fn geometric_weights(ratio: f64, len: usize) -> Vec<f64> {
    (1..=len as i32).map(|k| ratio.powi(k)).collect()
}

/// The origin followed by `count - 1` points with log-uniform norms in
/// `[2^-4, 2^6]` and Gaussian directions, so that many dyadic annuli are
/// populated.
pub fn random_point_set(p: Exponent, dim: usize, count: usize, seed: u64) -> Result<LpPointSet> {
    if dim == 0 || count == 0 {
        return Err(Error::param("need at least one point and one dimension"));
    }
    let mut rng = rng(seed);
    let mut pts = vec![vec![0.0; dim]];
    for _ in 1..count {
        let dir = unit_direction(&mut rng, p, dim);
        let radius = 2f64.powf(rng.gen_range(-4.0..6.0));
        pts.push(dir.into_iter().map(|x| x * radius).collect());
    }
    LpPointSet::new(p, pts, Some(0))
}

/// Shortest-path metric of a sparse random graph: a random cycle through
/// all points plus about two random chords per point, with log-uniform
/// edge lengths in `[0.05, 20]`. Missing entries start at infinity and the
/// matrix is repaired by shortest-path closure, which keeps distances
/// spread over several scales (a dense matrix would collapse them).
pub fn random_metric(n: usize, seed: u64) -> Result<FiniteMetricSpace> {
    let mut rng = rng(seed);
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    let (lo, hi) = (0.05f64.ln(), 20f64.ln());
    let edge = |d: &mut Vec<Vec<f64>>, i: usize, j: usize, rng: &mut ChaCha8Rng| {
        let v = rng.gen_range(lo..hi).exp();
        if v < d[i][j] {
            d[i][j] = v;
            d[j][i] = v;
        }
    };
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    if n > 1 {
        for k in 0..n {
            let (i, j) = (order[k], order[(k + 1) % n]);
            if i != j {
                edge(&mut d, i, j, &mut rng);
            }
        }
    }
    for i in 0..n {
        for _ in 0..2 {
            let j = rng.gen_range(0..n);
            if j != i {
                edge(&mut d, i, j, &mut rng);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    validate_metric(&d)
}

/// The metric `d^s` for `0 < s <= 1`.
pub fn snowflake(x: &FiniteMetricSpace, s: f64) -> Result<FiniteMetricSpace> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::param(format!("snowflake exponent must lie in (0, 1], got {s}")));
    }
    Ok(FiniteMetricSpace::from_fn_trusted(x.len(), |i, j| x.dist(i, j).powf(s)))
}

/// The metric `c * d`.
pub fn scaled(x: &FiniteMetricSpace, c: f64) -> Result<FiniteMetricSpace> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::param("scale must be positive"));
    }
    Ok(FiniteMetricSpace::from_fn_trusted(x.len(), |i, j| c * x.dist(i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kalton_sample_contents() {
        let w = geometric_weights(0.25, 6);
        assert!((w.iter().sum::<f64>() - (1.0 - 0.25f64.powi(6)) / 3.0).abs() < 1e-15);
        let s = kalton_compact_sample(Exponent::Finite(2.0), &w, 40, 3).unwrap();
        assert_eq!(s.len(), 1 + 12 + 40);
        for x in s.points() {
            for (c, a) in x.iter().zip(&w) {
                assert!(c.abs() <= a * (1.0 + 1e-12));
            }
            assert!(s.p().norm(x) <= w.iter().sum::<f64>() + 1e-12);
        }
        for (n, a) in w.iter().enumerate() {
            let mut e = vec![0.0; 6];
            e[n] = *a;
            assert!(s.points().contains(&e));
        }
    }

    #[test]
    fn kalton_weight_constraints() {
        let p = Exponent::Finite(1.0);
        assert!(kalton_compact_sample(p, &[0.6, 0.5], 1, 0).is_err());
        assert!(kalton_compact_sample(p, &[0.1, 0.2], 1, 0).is_err());
        assert!(kalton_compact_sample(p, &[0.1, -0.05], 1, 0).is_err());
        assert!(kalton_compact_sample(p, &[], 1, 0).is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        let a = random_point_set(Exponent::Infinity, 4, 20, 9).unwrap();
        let b = random_point_set(Exponent::Infinity, 4, 20, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(random_metric(10, 1).unwrap(), random_metric(10, 1).unwrap());
        assert_ne!(random_metric(10, 1).unwrap(), random_metric(10, 2).unwrap());
    }
}
