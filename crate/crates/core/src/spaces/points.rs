use super::exponent::Exponent;
use super::metric::FiniteMetricSpace;
use crate::error::{Error, Result};

/// `2^k`, exact for every `k` in the normal range.
#[inline]
pub fn pow2(k: i32) -> f64 {
    2f64.powi(k)
}

/// The unique `k` with `2^k <= norm < 2^{k+1}`, or `None` for the zero
/// vector (the basepoint).
pub fn dyadic_annulus_index(norm: f64) -> Option<i32> {
    if !(norm > 0.0) || !norm.is_finite() {
        return None;
    }
    let mut k = norm.log2().floor() as i32;
    while pow2(k) > norm {
        k -= 1;
    }
    while pow2(k + 1) <= norm {
        k += 1;
    }
    Some(k)
}

/// A finite list of points in coordinate `l_p^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpPointSet {
    p: Exponent,
    dim: usize,
    points: Vec<Vec<f64>>,
    basepoint: Option<usize>,
}

impl LpPointSet {
    /// Validates coordinates, distinctness of points and the basepoint.
    pub fn new(p: Exponent, points: Vec<Vec<f64>>, basepoint: Option<usize>) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        for (i, x) in points.iter().enumerate() {
            if x.len() != dim {
                return Err(Error::InvalidPoints(format!("point {i} has {} coordinates, expected {dim}", x.len())));
            }
            if x.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidPoints(format!("point {i} has a non-finite coordinate")));
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::InvalidPoints(format!("points {i} and {j} coincide")));
                }
            }
        }
        if let Some(b) = basepoint {
            let x = points
                .get(b)
                .ok_or_else(|| Error::InvalidPoints(format!("basepoint index {b} out of range")))?;
            if p.norm(x) != 0.0 {
                return Err(Error::InvalidPoints(format!("basepoint {b} is not the origin")));
            }
        }
        Ok(Self { p, dim, points, basepoint })
    }

    pub fn p(&self) -> Exponent {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn norm(&self, i: usize) -> f64 {
        self.p.norm(&self.points[i])
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.p.distance(&self.points[i], &self.points[j])
    }

    /// Annulus index of point `i`; `None` at the origin.
    pub fn annulus(&self, i: usize) -> Option<i32> {
        dyadic_annulus_index(self.norm(i))
    }

    /// Indices of the points with `||x||_p <= 2^{k+1}`.
    pub fn ball_members(&self, k: i32) -> Vec<usize> {
        let radius = pow2(k.saturating_add(1).clamp(-1070, 1023));
        (0..self.len()).filter(|&i| self.norm(i) <= radius).collect()
    }

    /// The induced metric `||x - y||_p`.
    pub fn to_metric(&self) -> FiniteMetricSpace {
        FiniteMetricSpace::from_fn_trusted(self.len(), |i, j| self.distance(i, j))
    }

    /// Every point multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let pts = self.points.iter().map(|x| x.iter().map(|c| c * factor).collect()).collect();
        Self::new(self.p, pts, self.basepoint)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annulus_examples() {
        assert_eq!(dyadic_annulus_index(1.0), Some(0));
        assert_eq!(dyadic_annulus_index(5.0), Some(2));
        assert_eq!(dyadic_annulus_index(4.0), Some(2));
        assert_eq!(dyadic_annulus_index(3.999999), Some(1));
        assert_eq!(dyadic_annulus_index(0.3), Some(-2));
        assert_eq!(dyadic_annulus_index(0.0), None);
    }

    #[test]
    fn ball_membership() {
        let s = LpPointSet::new(
            Exponent::Finite(2.0),
            vec![vec![0.0, 0.0], vec![0.5, 0.0], vec![0.0, 1.0], vec![3.0, 4.0]],
            Some(0),
        )
        .unwrap();
        assert_eq!(s.ball_members(0), vec![0, 1, 2]);
        assert_eq!(s.ball_members(60), vec![0, 1, 2, 3]);
        assert_eq!(s.ball_members(-60), vec![0]);
    }

    #[test]
    fn rejects_bad_sets() {
        let p = Exponent::Finite(2.0);
        assert!(LpPointSet::new(p, vec![vec![1.0], vec![1.0, 2.0]], None).is_err());
        assert!(LpPointSet::new(p, vec![vec![1.0], vec![1.0]], None).is_err());
        assert!(LpPointSet::new(p, vec![vec![1.0], vec![2.0]], Some(0)).is_err());
        assert!(LpPointSet::new(p, vec![vec![f64::NAN]], None).is_err());
    }

    #[test]
    fn induced_metric_is_valid() {
        let s = LpPointSet::new(Exponent::Infinity, vec![vec![0.0, 0.0], vec![1.0, -2.0], vec![3.0, 1.0]], None)
            .unwrap();
        let m = s.to_metric();
        super::super::metric::validate_metric(&m.rows()).unwrap();
        assert_eq!(m.dist(1, 2), 3.0);
    }
}
