//! Vertex polytopes in the closed non-negative orthant.

use crate::error::{Error, Result};
use crate::planar::{convex_hull, polygon_area};

/// Convex hull of a finite vertex list in `(R^+)^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
}

impl Polytope {
    pub fn new(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let dim = vertices
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidPolytope("no vertices".into()))?;
        if dim == 0 {
            return Err(Error::InvalidPolytope("zero-dimensional vertices".into()));
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
            }
            if v.iter().any(|c| !c.is_finite() || *c < 0.0) {
                return Err(Error::InvalidPolytope(format!(
                    "vertex {v:?} is not in the closed non-negative orthant"
                )));
            }
        }
        Ok(Self { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub(crate) fn max_coordinate(&self, axis: usize) -> f64 {
        self.vertices.iter().map(|v| v[axis]).fold(0.0, f64::max)
    }

    pub(crate) fn support(&self, x: &[f64]) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.iter().zip(x).map(|(a, b)| a * b).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub(crate) fn contains(&self, y: &[f64], tol: f64) -> bool {
        let scale = 1.0 + y.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        for (i, &c) in y.iter().enumerate() {
            if c < -tol || c > self.max_coordinate(i) + tol * scale {
                return false;
            }
        }
        hull_contains(&self.vertices, y, tol * scale)
    }

    pub(crate) fn volume(&self) -> Result<f64> {
        match self.dim {
            1 => {
                let lo = self.vertices.iter().map(|v| v[0]).fold(f64::INFINITY, f64::min);
                let hi = self.max_coordinate(0);
                Ok(hi - lo)
            }
            2 => {
                let pts: Vec<[f64; 2]> = self.vertices.iter().map(|v| [v[0], v[1]]).collect();
                Ok(polygon_area(&convex_hull(&pts)).abs())
            }
            d => Err(Error::Unsupported(format!("polytope volume in dimension {d}"))),
        }
    }
}

/// Phase-I simplex (Bland's rule) deciding whether `y` is a convex combination
/// of `vertices`, i.e. whether `sum l_k v_k = y, sum l_k = 1, l >= 0` is feasible.
pub(crate) fn hull_contains(vertices: &[Vec<f64>], y: &[f64], tol: f64) -> bool {
    let m = vertices.len();
    let rows = y.len() + 1;
    let cols = m + rows + 1;
    let rhs = cols - 1;
    let mut t = vec![vec![0.0; cols]; rows];
    for (i, row) in t.iter_mut().enumerate() {
        let target = if i < y.len() { y[i] } else { 1.0 };
        let sign = if target < 0.0 { -1.0 } else { 1.0 };
        for (k, v) in vertices.iter().enumerate() {
            row[k] = sign * if i < y.len() { v[i] } else { 1.0 };
        }
        row[m + i] = 1.0;
        row[rhs] = sign * target;
    }
    let mut basis: Vec<usize> = (m..m + rows).collect();
    // reduced costs of the phase-I objective (sum of artificials)
    let mut cost = vec![0.0; cols];
    for row in &t {
        for k in 0..m {
            cost[k] -= row[k];
        }
        cost[rhs] -= row[rhs];
    }
    const PIVOT_EPS: f64 = 1e-12;
    for _ in 0..10_000 {
        let Some(enter) = (0..rhs).find(|&k| cost[k] < -PIVOT_EPS) else {
            break;
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for (i, row) in t.iter().enumerate() {
            if row[enter] > PIVOT_EPS {
                let ratio = row[rhs] / row[enter];
                let better = match leave {
                    None => true,
                    Some(l) => ratio < best - 1e-15 || (ratio <= best + 1e-15 && basis[i] < basis[l]),
                };
                if better {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(p) = leave else { break };
        let pivot = t[p][enter];
        for v in t[p].iter_mut() {
            *v /= pivot;
        }
        let pivot_row = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != p && row[enter] != 0.0 {
                let f = row[enter];
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
        let f = cost[enter];
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            *v -= f * pv;
        }
        basis[p] = enter;
    }
    let infeasibility = -cost[rhs];
    infeasibility <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex() -> Vec<Vec<f64>> {
        vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]
    }

    #[test]
    fn lp_membership() {
        let v = simplex();
        assert!(hull_contains(&v, &[0.3, 0.3], 1e-12));
        assert!(hull_contains(&v, &[0.5, 0.5], 1e-12));
        assert!(hull_contains(&v, &[0.0, 0.0], 1e-12));
        assert!(!hull_contains(&v, &[0.6, 0.6], 1e-12));
        assert!(!hull_contains(&v, &[0.5, 0.5 + 1e-9], 1e-12));
    }

    #[test]
    fn lp_membership_three_dimensional() {
        let v = vec![
            vec![0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 1.0, 1.0],
        ];
        assert!(hull_contains(&v, &[0.5, 0.5, 0.5], 1e-12));
        assert!(hull_contains(&v, &[0.2, 0.2, 0.1], 1e-12));
        assert!(!hull_contains(&v, &[1.0, 1.0, 0.0], 1e-12));
    }

    #[test]
    fn rejects_bad_vertices() {
        assert!(Polytope::new(vec![]).is_err());
        assert!(Polytope::new(vec![vec![0.0, -1.0]]).is_err());
        assert!(matches!(
            Polytope::new(vec![vec![0.0, 0.0], vec![1.0]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn volumes() {
        let p = Polytope::new(simplex()).unwrap();
        assert!((p.volume().unwrap() - 0.5).abs() < 1e-15);
        let q = Polytope::new(vec![vec![0.0; 3], vec![1.0, 0.0, 0.0]]).unwrap();
        assert!(matches!(q.volume(), Err(Error::Unsupported(_))));
    }
}
