use super::metric::FiniteMetricSpace;
use crate::error::{Error, Result};

/// Greedy `delta`-net: points are scanned in index order and kept when they
/// lie farther than `delta` from every point kept so far.
///
/// Every point ends up within `delta` of the net, and distinct net points
/// are more than `delta` apart.
pub fn epsilon_net(x: &FiniteMetricSpace, delta: f64) -> Result<Vec<usize>> {
    if !(delta > 0.0) {
        return Err(Error::param(format!("net radius must be positive, got {delta}")));
    }
    let mut net: Vec<usize> = Vec::new();
    for i in 0..x.len() {
        if net.iter().all(|&r| x.dist(i, r) > delta) {
            net.push(i);
        }
    }
    Ok(net)
}

/// Map every point to a nearest net point; ties go to the lowest index.
pub fn nearest_net_map(x: &FiniteMetricSpace, net: &[usize]) -> Result<Vec<usize>> {
    if net.is_empty() {
        return Err(Error::param("net must be non-empty"));
    }
    let mut sorted = net.to_vec();
    sorted.sort_unstable();
    Ok((0..x.len())
        .map(|i| {
            let mut best = sorted[0];
            for &r in &sorted[1..] {
                if x.dist(i, r) < x.dist(i, best) {
                    best = r;
                }
            }
            best
        })
        .collect())
}

/// `max_x d(x, R)`.
pub fn covering_radius(x: &FiniteMetricSpace, net: &[usize]) -> f64 {
    (0..x.len())
        .map(|i| net.iter().map(|&r| x.dist(i, r)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// `min { d(r, s) : r != s in R }`, `inf` for a single point.
pub fn separation(x: &FiniteMetricSpace, net: &[usize]) -> f64 {
    let mut m = f64::INFINITY;
    for (a, &r) in net.iter().enumerate() {
        for &s in &net[a + 1..] {
            m = m.min(x.dist(r, s));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::fixtures::line;

    #[test]
    fn greedy_net_on_a_line() {
        let x = line(&[0.0, 1.0, 2.0, 3.0]).unwrap();
        let net = epsilon_net(&x, 1.0).unwrap();
        assert_eq!(net, vec![0, 2]);
        assert_eq!(nearest_net_map(&x, &net).unwrap(), vec![0, 0, 2, 2]);
        assert!(covering_radius(&x, &net) <= 1.0);
        assert!(separation(&x, &net) > 1.0);
    }

    #[test]
    fn degenerate_cases() {
        let single = line(&[4.0]).unwrap();
        assert_eq!(epsilon_net(&single, 0.1).unwrap(), vec![0]);
        let x = line(&[0.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(epsilon_net(&x, 3.0).unwrap(), vec![0]);
        assert!(epsilon_net(&x, 0.0).is_err());
        assert!(nearest_net_map(&x, &[]).is_err());
    }

    #[test]
    fn net_points_map_to_themselves() {
        let x = line(&[0.0, 0.3, 1.7, 2.2, 5.0, 5.1]).unwrap();
        let net = epsilon_net(&x, 0.5).unwrap();
        let c = nearest_net_map(&x, &net).unwrap();
        for &r in &net {
            assert_eq!(c[r], r);
        }
    }
}
