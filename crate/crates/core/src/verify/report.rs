use serde::{Deserialize, Serialize};

use crate::tolerance::{ge_rel, le_rel};

/// One certified pair: source distance, image distance and the bounds it was
/// held to. Margins are `d_y - lower` and `upper - d_y`; a row passes when
/// every bound holds up to a relative slack of `1e-9`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub d_x: f64,
    pub d_y: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<f64>,
    /// A sharper upper bound that applies to this pair only (the constants 3
    /// and 5 of the case analysis for the `l_p` construction).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refined_upper: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_margin: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper_margin: Option<f64>,
    pub pass: bool,
}

impl PairCheck {
    pub fn new(i: usize, j: usize, d_x: f64, d_y: f64, lower: Option<f64>, upper: Option<f64>) -> Self {
        let mut row = Self {
            i,
            j,
            d_x,
            d_y,
            lower,
            upper,
            refined_upper: None,
            lower_margin: lower.map(|l| d_y - l),
            upper_margin: upper.map(|u| u - d_y),
            pass: true,
        };
        row.pass = row.evaluate();
        row
    }

    pub fn with_refined_upper(mut self, bound: f64) -> Self {
        self.refined_upper = Some(bound);
        self.pass = self.evaluate();
        self
    }

    fn evaluate(&self) -> bool {
        let d_y = self.d_y;
        d_y.is_finite()
            && self.lower.is_none_or(|l| ge_rel(d_y, l))
            && self.upper.is_none_or(|u| le_rel(d_y, u))
            && self.refined_upper.is_none_or(|u| le_rel(d_y, u))
    }

    /// `d_y / lower`; values below one are violations.
    pub fn lower_ratio(&self) -> Option<f64> {
        self.lower.filter(|l| *l > 0.0).map(|l| self.d_y / l)
    }

    /// Largest `d_y / bound` over the upper bounds; values above one are
    /// violations.
    pub fn upper_ratio(&self) -> Option<f64> {
        [self.upper, self.refined_upper]
            .into_iter()
            .flatten()
            .filter(|u| *u > 0.0)
            .map(|u| self.d_y / u)
            .reduce(f64::max)
    }
}

/// Pairwise certification record. The verdict is the conjunction of the
/// rows; the worst pairs are those with the smallest `d_y / lower` and the
/// largest `d_y / upper`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub check: String,
    pub pairs: usize,
    pub failures: usize,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_lower: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_upper: Option<[usize; 2]>,
    pub rows: Vec<PairCheck>,
}

impl EmbeddingReport {
    pub fn from_rows(check: impl Into<String>, mut rows: Vec<PairCheck>) -> Self {
        rows.sort_by_key(|r| (r.i, r.j));
        let failures = rows.iter().filter(|r| !r.pass).count();
        let worst_lower = extreme(&rows, PairCheck::lower_ratio, |a, b| a < b);
        let worst_upper = extreme(&rows, PairCheck::upper_ratio, |a, b| a > b);
        Self { check: check.into(), pairs: rows.len(), failures, pass: failures == 0, worst_lower, worst_upper, rows }
    }

    /// Combine two reports over disjoint pair sets.
    pub fn merge(self, other: EmbeddingReport) -> Self {
        let mut rows = self.rows;
        rows.extend(other.rows);
        Self::from_rows(self.check, rows)
    }

    pub fn failing_rows(&self) -> impl Iterator<Item = &PairCheck> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn row(&self, i: usize, j: usize) -> Option<&PairCheck> {
        let key = (i.min(j), i.max(j));
        self.rows.binary_search_by_key(&key, |r| (r.i, r.j)).ok().map(|k| &self.rows[k])
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,d_x,d_y,lower,upper,refined_upper,lower_margin,upper_margin,pass\n");
        let cell = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                r.i,
                r.j,
                r.d_x,
                r.d_y,
                cell(r.lower),
                cell(r.upper),
                cell(r.refined_upper),
                cell(r.lower_margin),
                cell(r.upper_margin),
                r.pass
            ));
        }
        out
    }
}

fn extreme(
    rows: &[PairCheck],
    key: impl Fn(&PairCheck) -> Option<f64>,
    better: impl Fn(f64, f64) -> bool,
) -> Option<[usize; 2]> {
    let mut best: Option<(f64, [usize; 2])> = None;
    for r in rows {
        if let Some(v) = key(r) {
            if best.is_none_or(|(b, _)| better(v, b)) {
                best = Some((v, [r.i, r.j]));
            }
        }
    }
    best.map(|(_, p)| p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_is_conjunction() {
        let ok = PairCheck::new(0, 1, 1.0, 1.0, Some(0.5), Some(2.0));
        let bad = PairCheck::new(0, 2, 1.0, 3.0, Some(0.5), Some(2.0));
        assert!(ok.pass && !bad.pass);
        let r = EmbeddingReport::from_rows("t", vec![bad.clone(), ok.clone()]);
        assert!(!r.pass);
        assert_eq!(r.failures, 1);
        assert_eq!(r.worst_upper, Some([0, 2]));
        assert_eq!(r.row(2, 0), Some(&bad));
        let empty = EmbeddingReport::from_rows("t", vec![]);
        assert!(empty.pass && empty.worst_lower.is_none());
    }

    #[test]
    fn refined_bound_can_fail_alone() {
        let r = PairCheck::new(0, 1, 1.0, 4.0, Some(0.1), Some(9.0)).with_refined_upper(3.0);
        assert!(!r.pass);
        assert_eq!(r.upper_ratio(), Some(4.0 / 3.0));
    }

    #[test]
    fn merge_is_order_independent() {
        let a = EmbeddingReport::from_rows("t", vec![PairCheck::new(0, 1, 1.0, 1.0, None, Some(1.0))]);
        let b = EmbeddingReport::from_rows("t", vec![PairCheck::new(1, 2, 2.0, 2.5, None, Some(2.0))]);
        assert_eq!(a.clone().merge(b.clone()), b.merge(a));
    }

    #[test]
    fn csv_has_one_line_per_pair() {
        let r = EmbeddingReport::from_rows("t", vec![PairCheck::new(0, 1, 1.0, 1.0, None, Some(1.0))]);
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.lines().nth(1).unwrap().starts_with("0,1,1,1,,1,,,0,true"));
    }
}
