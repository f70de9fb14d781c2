use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::coords::{g_unchecked, weight_unchecked, KaltonCoordinate};
use crate::error::{Error, Result};
use crate::moduli::{check_regular, Class, Modulus, ModulusCurve};
use crate::parallel::{install, unordered_pairs};
use crate::spaces::FiniteMetricSpace;
use crate::tolerance::{approx_eq, le};
use crate::verify::{EmbeddingReport, PairCheck};

/// The map `x -> (h_{p,q}(x))` over all ordered pairs `p != q`, as a table
/// with one row per coordinate and one column per point.
#[derive(Debug, Clone, PartialEq)]
pub struct StableEmbedding {
    pub base: FiniteMetricSpace,
    pub basepoint: usize,
    pub rho: ModulusCurve,
    pub omega: ModulusCurve,
    pub coordinates: Vec<KaltonCoordinate>,
    pub table: Vec<Vec<f64>>,
}

/// Build the table. Both moduli must already be regular (non-decreasing,
/// `f(t)/t` non-increasing); run them through `regularize_rho` and
/// `regularize_omega` first.
pub fn embed_stable(
    m: &FiniteMetricSpace,
    basepoint: usize,
    rho: &ModulusCurve,
    omega: &ModulusCurve,
) -> Result<StableEmbedding> {
    if basepoint >= m.len() {
        return Err(Error::param(format!("basepoint {basepoint} out of range for {} points", m.len())));
    }
    check_regular(rho, Class::P)?;
    check_regular(omega, Class::Omega)?;

    let mut coordinates = Vec::with_capacity(m.len() * m.len().saturating_sub(1));
    for p in 0..m.len() {
        for q in 0..m.len() {
            if p != q {
                coordinates.push(KaltonCoordinate { p, q, weight: weight_unchecked(m, rho, p, q) });
            }
        }
    }
    let table = install(|| {
        coordinates
            .par_iter()
            .map(|c| (0..m.len()).map(|x| c.weight * g_unchecked(m, basepoint, c.p, c.q, x)).collect())
            .collect()
    });
    Ok(StableEmbedding { base: m.clone(), basepoint, rho: rho.clone(), omega: omega.clone(), coordinates, table })
}

/// Sandwich report plus the two structural checks: the coordinate `(x, y)`
/// attains `rho(d(x,y))`, and every coordinate has `N_omega <= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StableReport {
    pub pass: bool,
    pub lower_attained: bool,
    pub max_n_omega: f64,
    pub report: EmbeddingReport,
}

impl StableEmbedding {
    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// Point-major copy of the table.
    fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|x| self.table.iter().map(|row| row[x]).collect()).collect()
    }

    /// `max_{(p,q)} |h_{p,q}(x) - h_{p,q}(y)|`.
    pub fn distance(&self, x: usize, y: usize) -> f64 {
        self.table.iter().map(|row| (row[x] - row[y]).abs()).fold(0.0, f64::max)
    }

    pub fn coordinate_index(&self, p: usize, q: usize) -> Option<usize> {
        let n = self.len();
        (p != q && p < n && q < n).then(|| p * (n - 1) + if q > p { q - 1 } else { q })
    }

    /// Embedded distances as a metric space.
    pub fn image_metric(&self) -> FiniteMetricSpace {
        let cols = self.columns();
        FiniteMetricSpace::from_fn_trusted(self.len(), |x, y| sup_distance(&cols[x], &cols[y]))
    }

    /// `N_omega` of every coordinate, in coordinate order.
    pub fn n_omega_rows(&self) -> Vec<f64> {
        let pairs = unordered_pairs(self.len());
        let omega: Vec<f64> = pairs.iter().map(|&(x, y)| self.omega.value(self.base.dist(x, y))).collect();
        install(|| {
            self.table
                .par_iter()
                .map(|row| {
                    pairs
                        .iter()
                        .zip(&omega)
                        .map(|(&(x, y), w)| (row[x] - row[y]).abs() / w)
                        .fold(0.0, f64::max)
                })
                .collect()
        })
    }

    pub fn verify(&self) -> StableReport {
        let cols = self.columns();
        let pairs = unordered_pairs(self.len());
        let checked: Vec<(PairCheck, bool)> = install(|| {
            pairs
                .par_iter()
                .map(|&(x, y)| {
                    let d = self.base.dist(x, y);
                    let image = sup_distance(&cols[x], &cols[y]);
                    let lower = self.rho.value(d);
                    let c = self.coordinate_index(x, y).expect("x != y");
                    let attained = approx_eq((self.table[c][x] - self.table[c][y]).abs(), lower);
                    (PairCheck::new(x, y, d, image, Some(lower), Some(self.omega.value(d))), attained)
                })
                .collect()
        });
        let lower_attained = checked.iter().all(|(_, a)| *a);
        let report = EmbeddingReport::from_rows("stable_sandwich", checked.into_iter().map(|(r, _)| r).collect());
        let max_n_omega = self.n_omega_rows().into_iter().fold(0.0, f64::max);
        StableReport {
            pass: report.pass && lower_attained && le(max_n_omega, 1.0),
            lower_attained,
            max_n_omega,
            report,
        }
    }
}

fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::{regularize_omega, regularize_rho};
    use crate::spaces::fixtures::{line, random_metric};

    fn moduli(s: f64) -> (ModulusCurve, ModulusCurve) {
        (
            regularize_rho(&ModulusCurve::power_rho(s).unwrap()).unwrap(),
            regularize_omega(&ModulusCurve::power_omega(s).unwrap()).unwrap(),
        )
    }

    #[test]
    fn two_points_land_on_rho() {
        let (rho, omega) = moduli(0.5);
        for d in [0.3, 1.0, 7.0] {
            let m = line(&[0.0, d]).unwrap();
            let e = embed_stable(&m, 0, &rho, &omega).unwrap();
            assert!(approx_eq(e.distance(0, 1), rho.value(d)));
            assert!(e.verify().pass);
        }
    }

    #[test]
    fn basepoint_column_is_zero() {
        let (rho, omega) = moduli(0.5);
        let m = random_metric(8, 5).unwrap();
        let e = embed_stable(&m, 3, &rho, &omega).unwrap();
        assert!(e.table.iter().all(|row| row[3] == 0.0));
        assert_eq!(e.coordinates.len(), 8 * 7);
        for (c, coord) in e.coordinates.iter().enumerate() {
            assert_eq!(e.coordinate_index(coord.p, coord.q), Some(c));
        }
    }

    #[test]
    fn line_fixture_sandwich() {
        let m = line(&[0.0, 1.0, 3.0]).unwrap();
        let (rho, omega) = moduli(0.5);
        let e = embed_stable(&m, 0, &rho, &omega).unwrap();
        let r = e.verify();
        assert!(r.pass && r.lower_attained);
        assert!(r.max_n_omega <= 1.0 + 1e-9);
        assert_eq!(r.report.rows.len(), 3);
    }

    #[test]
    fn random_metrics_pass() {
        for (seed, s) in [(1, 0.25), (2, 0.5), (3, 0.9)] {
            let m = random_metric(20, seed).unwrap();
            let (rho, omega) = moduli(s);
            let r = embed_stable(&m, 0, &rho, &omega).unwrap().verify();
            assert!(r.pass, "seed {seed}: {:?}", r.report.failing_rows().next());
            let image = embed_stable(&m, 0, &rho, &omega).unwrap().image_metric();
            assert_eq!(image.dist(0, 1), r.report.row(0, 1).unwrap().d_y);
        }
    }

    #[test]
    fn irregular_moduli_rejected() {
        let m = line(&[0.0, 1.0]).unwrap();
        let dip = ModulusCurve::piecewise_linear(
            vec![(0.0, 0.0), (1.0, 1.0), (1.5, 0.5)],
            crate::moduli::Extension::Power { alpha: 1.0 },
            crate::moduli::Extension::Affine { slope: 0.0 },
        )
        .unwrap();
        let omega = ModulusCurve::power_omega(0.5).unwrap();
        assert!(matches!(embed_stable(&m, 0, &dip, &omega), Err(Error::NotRegularized(_))));
        assert!(embed_stable(&m, 5, &ModulusCurve::power_rho(0.5).unwrap(), &omega).is_err());
    }
}
