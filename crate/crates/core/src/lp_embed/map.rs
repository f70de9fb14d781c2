use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::plan::LpEmbeddingPlan;
use crate::error::{Error, Result};
use crate::parallel::install;
use crate::spaces::{pow2, BlockSpace, BlockVector, FiniteMetricSpace, LpPointSet};

/// Coordinate truncation `P_m`: keeps the first `m` coordinates.
pub fn bap_truncation(x: &[f64], m: usize) -> Result<Vec<f64>> {
    if m > x.len() {
        return Err(Error::param(format!("truncation {m} exceeds dimension {}", x.len())));
    }
    let mut out = x.to_vec();
    out[m..].iter_mut().for_each(|c| *c = 0.0);
    Ok(out)
}

/// `f_k(x) = sum_{n <= n_max + 1} 2^{-n} P_{m(k,n)} x`, with the `n`-th term
/// placed in block `psi(k, n)`. Zero-dimensional blocks are omitted.
pub fn slice_embed(plan: &LpEmbeddingPlan, k: i32, x: &[f64]) -> Result<BlockVector> {
    if x.len() != plan.dim {
        return Err(Error::InvalidPoints(format!("point has {} coordinates, plan expects {}", x.len(), plan.dim)));
    }
    if plan.psi(k, 1).is_none() {
        return Err(Error::Domain(format!("slice {k} is outside the planned range {:?}", plan.k_range)));
    }
    let norm = plan.p.norm(x);
    if norm > pow2(k + 1) {
        return Err(Error::Domain(format!("point of norm {norm} is not in the ball B_{k}")));
    }
    let mut v = BlockVector::zero();
    for n in 1..=plan.n_max + 1 {
        let j = plan.psi(k, n).expect("n within plan");
        let m = plan.blocks[j].m;
        if m > 0 {
            v.add_to_block(j, pow2(-(n as i32)), &x[..m]);
        }
    }
    Ok(v)
}

/// `lambda f_k(x) + (1 - lambda) f_{k+1}(x)` with
/// `lambda = (2^{k+1} - ||x||) / 2^k`, for `2^k <= ||x|| <= 2^{k+1}`.
///
/// At `||x|| = 2^{k+1}` the slices `k` and `k + 1` give the same value.
pub fn blend(plan: &LpEmbeddingPlan, k: i32, x: &[f64]) -> Result<BlockVector> {
    let norm = plan.p.norm(x);
    if norm < pow2(k) || norm > pow2(k + 1) {
        return Err(Error::Domain(format!("norm {norm} is outside the closed annulus {k}")));
    }
    let lambda = (pow2(k + 1) - norm) / pow2(k);
    let mut v = BlockVector::zero();
    if lambda > 0.0 {
        add_scaled(&mut v, &slice_embed(plan, k, x)?, lambda);
    }
    if lambda < 1.0 {
        add_scaled(&mut v, &slice_embed(plan, k + 1, x)?, 1.0 - lambda);
    }
    Ok(v)
}

fn add_scaled(acc: &mut BlockVector, v: &BlockVector, w: f64) {
    for (j, x) in v.iter() {
        acc.add_to_block(j, w, x);
    }
}

/// The map `M -> Y` evaluated on every point of `M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpEmbedding {
    pub plan: LpEmbeddingPlan,
    pub values: Vec<BlockVector>,
}

/// `f(x) = blend(k, x)` for the half-open annulus index `k` of `x`, and
/// `f(0) = 0`.
pub fn embed(plan: &LpEmbeddingPlan, points: &LpPointSet) -> Result<LpEmbedding> {
    if points.dim() != plan.dim || points.p() != plan.p {
        return Err(Error::InvalidPoints("point set does not match the plan".into()));
    }
    let values = install(|| {
        (0..points.len())
            .into_par_iter()
            .map(|i| match points.annulus(i) {
                None => Ok(BlockVector::zero()),
                Some(k) if k < plan.k_min() || k + 1 > plan.k_max_plus_one() => Err(Error::OutsidePlan { index: i, k }),
                Some(k) => blend(plan, k, points.point(i)),
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(LpEmbedding { plan: plan.clone(), values })
}

impl LpEmbedding {
    pub fn space(&self) -> BlockSpace {
        self.plan.block_space()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `||f(x_i) - f(x_j)||`.
    pub fn distance(&self, space: &BlockSpace, i: usize, j: usize) -> Result<f64> {
        space.distance(&self.values[i], &self.values[j])
    }

    /// Pairwise image distances as a metric space (no re-validation: the
    /// image of a norm is a pseudometric by construction).
    pub fn image_metric(&self) -> Result<FiniteMetricSpace> {
        let space = self.space();
        let n = self.len();
        let pairs = crate::parallel::unordered_pairs(n);
        let d: Vec<f64> = install(|| {
            pairs.par_iter().map(|&(i, j)| self.distance(&space, i, j)).collect::<Result<Vec<_>>>()
        })?;
        let mut full = vec![vec![0.0; n]; n];
        for (&(i, j), v) in pairs.iter().zip(d) {
            full[i][j] = v;
            full[j][i] = v;
        }
        Ok(FiniteMetricSpace::from_fn_trusted(n, |i, j| full[i][j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp_embed::plan::make_plan;
    use crate::moduli::{exp_dominate, ModulusCurve};
    use crate::spaces::fixtures::random_point_set;
    use crate::spaces::Exponent;
    use proptest::prelude::*;

    fn two_point() -> (LpPointSet, LpEmbeddingPlan) {
        let m = LpPointSet::new(Exponent::Finite(2.0), vec![vec![0.0], vec![1.0]], Some(0)).unwrap();
        let mu = exp_dominate(&ModulusCurve::exp_floor()).unwrap();
        let plan = make_plan(&m, &mu, 100.0, 0.06, Exponent::Finite(2.0)).unwrap();
        (m, plan)
    }

    #[test]
    fn truncation_examples() {
        let x = [3.0, 0.001, 0.0];
        let p1 = Exponent::Finite(1.0);
        let t = bap_truncation(&x, 1).unwrap();
        assert!((p1.distance(&x, &t) - 0.001).abs() < 1e-18);
        assert_eq!(bap_truncation(&x, 3).unwrap(), x.to_vec());
        assert!(bap_truncation(&x, 4).is_err());
    }

    #[test]
    fn two_point_slice_norm() {
        let (m, plan) = two_point();
        assert_eq!(plan.n_max, 1);
        let f0 = slice_embed(&plan, 0, m.point(1)).unwrap();
        let norm = plan.block_space().norm(&f0).unwrap();
        assert!((norm - 5f64.sqrt() / 4.0).abs() < 1e-15);
        let emb = embed(&plan, &m).unwrap();
        assert_eq!(emb.values[0], BlockVector::zero());
        assert!((emb.distance(&emb.space(), 0, 1).unwrap() - 5f64.sqrt() / 4.0).abs() < 1e-15);
    }

    #[test]
    fn origin_maps_to_zero() {
        let (_, plan) = two_point();
        let z = slice_embed(&plan, 0, &[0.0]).unwrap();
        assert_eq!(plan.block_space().norm(&z).unwrap(), 0.0);
    }

    #[test]
    fn slice_outside_ball_rejected() {
        let (_, plan) = two_point();
        assert!(slice_embed(&plan, 0, &[2.5]).is_err());
        assert!(slice_embed(&plan, 40, &[1.0]).is_err());
    }

    #[test]
    fn boundary_continuity() {
        let m = random_point_set(Exponent::Finite(2.0), 3, 40, 1).unwrap();
        let mu = exp_dominate(&ModulusCurve::exp_floor()).unwrap();
        let plan = make_plan(&m, &mu, 100.0, 0.06, Exponent::Finite(2.0)).unwrap();
        let space = plan.block_space();
        for k in plan.k_min()..plan.k_max_plus_one() - 1 {
            // a point of norm exactly 2^{k+1}
            let x = vec![pow2(k + 1), 0.0, 0.0];
            let lo = blend(&plan, k, &x).unwrap();
            let hi = blend(&plan, k + 1, &x).unwrap();
            assert!(space.distance(&lo, &hi).unwrap() <= 1e-15);
            // norm 2^k gives the slice itself
            let y = vec![pow2(k), 0.0, 0.0];
            assert_eq!(blend(&plan, k, &y).unwrap(), slice_embed(&plan, k, &y).unwrap());
        }
    }

    #[test]
    fn slices_are_one_lipschitz_and_homogeneous() {
        let m = random_point_set(Exponent::Infinity, 5, 30, 2).unwrap();
        let mu = exp_dominate(&ModulusCurve::exp_floor()).unwrap();
        let plan = make_plan(&m, &mu, 100.0, 0.06, Exponent::Finite(2.0)).unwrap();
        let space = plan.block_space();
        for k in plan.k_min()..=plan.k_max_plus_one() {
            let members = m.ball_members(k);
            for &a in &members {
                let fa = slice_embed(&plan, k, m.point(a)).unwrap();
                for &b in &members {
                    let fb = slice_embed(&plan, k, m.point(b)).unwrap();
                    assert!(space.distance(&fa, &fb).unwrap() <= m.distance(a, b) * (1.0 + 1e-12));
                }
                let half: Vec<f64> = m.point(a).iter().map(|c| 0.5 * c).collect();
                let fh = slice_embed(&plan, k, &half).unwrap();
                assert!(space.distance(&fh, &fa.scaled(0.5)).unwrap() <= 1e-12);
            }
        }
    }

    #[test]
    fn scaling_shifts_annuli_by_one() {
        let m = random_point_set(Exponent::Finite(2.0), 4, 30, 3).unwrap();
        let m2 = m.scaled(2.0).unwrap();
        for i in 0..m.len() {
            assert_eq!(m.annulus(i).map(|k| k + 1), m2.annulus(i));
        }
        let mu = exp_dominate(&ModulusCurve::exp_floor()).unwrap();
        let a = make_plan(&m, &mu, 100.0, 0.06, Exponent::Finite(2.0)).unwrap();
        let b = make_plan(&m2, &mu, 100.0, 0.06, Exponent::Finite(2.0)).unwrap();
        assert_eq!([a.k_range[0] + 1, a.k_range[1] + 1], b.k_range);
    }

    proptest! {
        #[test]
        fn truncation_is_contractive(
            x in prop::collection::vec(-10.0f64..10.0, 6),
            y in prop::collection::vec(-10.0f64..10.0, 6),
            m in 0usize..=6,
            p in prop_oneof![Just(Exponent::Finite(1.0)), Just(Exponent::Finite(2.0)), Just(Exponent::Finite(3.5)), Just(Exponent::Infinity)],
        ) {
            let px = bap_truncation(&x, m).unwrap();
            let py = bap_truncation(&y, m).unwrap();
            prop_assert!(p.distance(&px, &py) <= p.distance(&x, &y) * (1.0 + 1e-12));
        }
    }
}
