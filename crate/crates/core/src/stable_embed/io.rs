use serde::{Deserialize, Serialize};

use super::coords::KaltonCoordinate;
use super::embedding::{embed_stable, StableEmbedding, StableReport};
use crate::error::{Error, Result};
use crate::moduli::ModulusCurve;
use crate::spaces::{Space, SpaceFile};

pub const KIND: &str = "stable";

/// Serialized embedding: input space, the regularized moduli, coordinate
/// list with weights, the value table and the sandwich report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StableEmbeddingFile {
    pub kind: String,
    pub input: SpaceFile,
    pub basepoint: usize,
    pub rho: ModulusCurve,
    pub omega: ModulusCurve,
    pub coordinates: Vec<KaltonCoordinate>,
    pub table: Vec<Vec<f64>>,
    pub report: StableReport,
}

impl StableEmbeddingFile {
    pub fn new(input: &Space, emb: &StableEmbedding, report: &StableReport) -> Self {
        Self {
            kind: KIND.into(),
            input: SpaceFile::from(input),
            basepoint: emb.basepoint,
            rho: emb.rho.clone(),
            omega: emb.omega.clone(),
            coordinates: emb.coordinates.clone(),
            table: emb.table.clone(),
            report: report.clone(),
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

    /// Rebuild from the stored input and moduli, require the stored table
    /// to match, and re-run the certification.
    pub fn reverify(&self) -> Result<StableReport> {
        let m = Space::try_from(self.input.clone())?.metric();
        let emb = embed_stable(&m, self.basepoint, &self.rho, &self.omega)?;
        if emb.coordinates != self.coordinates || emb.table != self.table {
            return Err(Error::param("stored table does not match the construction from the stored input"));
        }
        Ok(emb.verify())
    }
}
