//! Serialized embedding: the input, the plan (which carries `mu`), the block
//! space, one sparse block vector per point and the sandwich report.

use serde::{Deserialize, Serialize};

use super::map::{embed, LpEmbedding};
use super::plan::build_plan;
use super::sandwich::{verify_sandwich, RangeParameters, SandwichReport};
use crate::error::{Error, Result};
use crate::spaces::{BlockSpace, BlockVector, LpPointSet, Space, SpaceFile};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpEmbeddingFile {
    pub kind: String,
    pub input: SpaceFile,
    pub plan: super::plan::LpEmbeddingPlan,
    pub space: BlockSpace,
    pub values: Vec<BlockVector>,
    pub range: RangeParameters,
    pub guaranteed_r: f64,
    pub report: crate::verify::EmbeddingReport,
}

pub const KIND: &str = "lp";

impl LpEmbeddingFile {
    pub fn new(points: &LpPointSet, emb: &LpEmbedding, report: &SandwichReport) -> Self {
        Self {
            kind: KIND.into(),
            input: SpaceFile::from(&Space::Points(points.clone())),
            plan: emb.plan.clone(),
            space: emb.space(),
            values: emb.values.clone(),
            range: report.range,
            guaranteed_r: report.guaranteed_r,
            report: report.report.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: Self = serde_json::from_str(text)?;
        if f.kind != KIND {
            return Err(Error::param(format!("expected an embedding of kind `{KIND}`, got `{}`", f.kind)));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("embedding files always serialize")
    }

    pub fn points(&self) -> Result<LpPointSet> {
        Space::try_from(self.input.clone())?.into_points()
    }

    /// Re-run the certification on the stored values. The stored plan and
    /// values must also agree with a fresh construction from the stored
    /// input; any disagreement is reported as an error.
    pub fn reverify(&self) -> Result<SandwichReport> {
        let points = self.points()?;
        let plan = &self.plan;
        let fresh = build_plan(&points, &plan.mu, plan.eta, plan.r, plan.outer)?;
        if &fresh != plan {
            return Err(Error::param("stored plan does not match the plan rebuilt from the input"));
        }
        if self.space != plan.block_space() {
            return Err(Error::param("stored block space does not match the plan"));
        }
        let rebuilt = embed(&fresh, &points)?;
        let stored = LpEmbedding { plan: fresh, values: self.values.clone() };
        let space = stored.space();
        for (i, (a, b)) in rebuilt.values.iter().zip(&stored.values).enumerate() {
            if space.distance(a, b)? > 0.0 {
                return Err(Error::param(format!("stored value of point {i} differs from the construction")));
            }
        }
        if rebuilt.values.len() != stored.values.len() {
            return Err(Error::param("stored value count does not match the input"));
        }
        verify_sandwich(&stored, &points, &stored.plan.mu, stored.plan.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp_embed::make_plan;
    use crate::moduli::{exp_dominate, ModulusCurve};
    use crate::spaces::fixtures::random_point_set;
    use crate::spaces::Exponent;

    #[test]
    fn round_trip_reverifies() {
        let m = random_point_set(Exponent::Infinity, 3, 15, 2).unwrap();
        let mu = exp_dominate(&ModulusCurve::exp_floor()).unwrap();
        let plan = make_plan(&m, &mu, 100.0, 0.06, Exponent::Finite(2.0)).unwrap();
        let emb = embed(&plan, &m).unwrap();
        let rep = verify_sandwich(&emb, &m, &mu, 0.06).unwrap();
        let file = LpEmbeddingFile::new(&m, &emb, &rep);
        let text = file.to_json();
        let back = LpEmbeddingFile::from_json(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_json(), text);
        assert_eq!(back.reverify().unwrap(), rep);
    }

    #[test]
    fn tampered_values_are_caught() {
        let m = random_point_set(Exponent::Finite(2.0), 2, 6, 9).unwrap();
        let mu = exp_dominate(&ModulusCurve::exp_floor()).unwrap();
        let plan = make_plan(&m, &mu, 100.0, 0.06, Exponent::Finite(2.0)).unwrap();
        let emb = embed(&plan, &m).unwrap();
        let rep = verify_sandwich(&emb, &m, &mu, 0.06).unwrap();
        let mut file = LpEmbeddingFile::new(&m, &emb, &rep);
        file.values[1] = file.values[1].scaled(1.5);
        assert!(file.reverify().is_err());
    }
}
