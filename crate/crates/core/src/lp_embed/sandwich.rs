use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::map::LpEmbedding;
use crate::error::{Error, Result};
use crate::moduli::{Modulus, ModulusCurve};
use crate::parallel::{install, unordered_pairs};
use crate::spaces::LpPointSet;
use crate::verify::{EmbeddingReport, PairCheck};

/// Upper Lipschitz constant of the construction.
pub const LIPSCHITZ: f64 = 9.0;
/// Constant for pairs with `||x|| <= ||y|| / 2`.
pub const FAR_PAIR_CONSTANT: f64 = 3.0;
/// Constant for pairs in the same dyadic annulus.
pub const SAME_ANNULUS_CONSTANT: f64 = 5.0;

/// Range-embedding parameters read off the sandwich: on pairs with
/// `d >= sigma(-1)` the map satisfies `r_eff d <= D <= distortion r_eff d`
/// with `r_eff = r 2^{mu(sigma(-1))}` and `distortion = 9 / r_eff`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangeParameters {
    pub sigma1: f64,
    pub r_eff: f64,
    pub distortion: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub range: RangeParameters,
    /// `(eta - 2) / (16 eta)`: the compression factor the construction
    /// guarantees for this `eta`.
    pub guaranteed_r: f64,
    pub report: EmbeddingReport,
}

impl SandwichReport {
    pub fn pass(&self) -> bool {
        self.report.pass
    }
}

pub fn range_parameters(mu: &ModulusCurve, sigma1: f64, r: f64) -> RangeParameters {
    let r_eff = r * 2f64.powf(mu.value(sigma1));
    RangeParameters { sigma1, r_eff, distortion: LIPSCHITZ / r_eff }
}

/// Certify `2^{mu(d)} r d <= ||f(x) - f(y)|| <= 9 d` on every pair, plus
/// `<= 3 d` when one norm is at most half the other and `<= 5 d` when both
/// points share a dyadic annulus.
pub fn verify_sandwich(emb: &LpEmbedding, points: &LpPointSet, mu: &ModulusCurve, r: f64) -> Result<SandwichReport> {
    if emb.len() != points.len() {
        return Err(Error::param(format!("embedding has {} values for {} points", emb.len(), points.len())));
    }
    let space = emb.space();
    let norms: Vec<f64> = (0..points.len()).map(|i| points.norm(i)).collect();
    let pairs = unordered_pairs(points.len());
    let rows = install(|| {
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let d = points.distance(i, j);
                let image = emb.distance(&space, i, j)?;
                let lower = 2f64.powf(mu.value(d)) * r * d;
                let row = PairCheck::new(i, j, d, image, Some(lower), Some(LIPSCHITZ * d));
                let (small, large) = (norms[i].min(norms[j]), norms[i].max(norms[j]));
                Ok(if small <= 0.5 * large {
                    row.with_refined_upper(FAR_PAIR_CONSTANT * d)
                } else if points.annulus(i).is_some() && points.annulus(i) == points.annulus(j) {
                    row.with_refined_upper(SAME_ANNULUS_CONSTANT * d)
                } else {
                    row
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let eta = emb.plan.eta;
    let sigma1 = emb.plan.sigma(1).unwrap_or(f64::INFINITY);
    Ok(SandwichReport {
        range: range_parameters(mu, sigma1, r),
        guaranteed_r: (eta - 2.0) / (16.0 * eta),
        report: EmbeddingReport::from_rows("lp_sandwich", rows),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp_embed::{embed, make_plan};
    use crate::moduli::exp_dominate;
    use crate::spaces::fixtures::{geometric_weights, kalton_compact_sample, random_point_set};
    use crate::spaces::{BlockVector, Exponent};

    fn mu() -> ModulusCurve {
        exp_dominate(&ModulusCurve::exp_floor()).unwrap()
    }

    fn run(m: &LpPointSet) -> SandwichReport {
        let plan = make_plan(m, &mu(), 100.0, 0.06, Exponent::Finite(2.0)).unwrap();
        let emb = embed(&plan, m).unwrap();
        verify_sandwich(&emb, m, &mu(), 0.06).unwrap()
    }

    #[test]
    fn two_point_sandwich() {
        let m = LpPointSet::new(Exponent::Finite(2.0), vec![vec![0.0], vec![1.0]], Some(0)).unwrap();
        let rep = run(&m);
        assert!(rep.pass());
        let row = &rep.report.rows[0];
        assert!((row.d_y - 5f64.sqrt() / 4.0).abs() < 1e-15);
        assert_eq!(row.refined_upper, Some(3.0));
    }

    #[test]
    fn singleton_has_no_pairs() {
        let m = LpPointSet::new(Exponent::Finite(2.0), vec![vec![0.0], vec![1.0]], Some(0)).unwrap();
        let plan = make_plan(&m, &mu(), 100.0, 0.06, Exponent::Finite(2.0)).unwrap();
        let single = LpPointSet::new(Exponent::Finite(2.0), vec![vec![0.0]], Some(0)).unwrap();
        let emb = LpEmbedding { plan, values: vec![BlockVector::zero()] };
        let rep = verify_sandwich(&emb, &single, &mu(), 0.06).unwrap();
        assert!(rep.pass() && rep.report.rows.is_empty());
    }

    #[test]
    fn random_sets_pass() {
        for p in [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinity] {
            let m = random_point_set(p, 5, 40, 11).unwrap();
            let rep = run(&m);
            assert!(rep.pass(), "{:?}", rep.report.failing_rows().next());
        }
    }

    #[test]
    fn kalton_sample_passes() {
        let w = geometric_weights(0.25, 6);
        let m = kalton_compact_sample(Exponent::Finite(2.0), &w, 30, 5).unwrap();
        assert!(run(&m).pass());
    }

    #[test]
    fn oversized_r_is_reported_not_hidden() {
        let m = random_point_set(Exponent::Finite(2.0), 3, 30, 4).unwrap();
        let plan = crate::lp_embed::build_plan(&m, &mu(), 100.0, 5.0, Exponent::Finite(2.0)).unwrap();
        let emb = embed(&plan, &m).unwrap();
        let rep = verify_sandwich(&emb, &m, &mu(), 5.0).unwrap();
        assert!(!rep.pass());
        assert!(rep.report.worst_lower.is_some());
    }
}
