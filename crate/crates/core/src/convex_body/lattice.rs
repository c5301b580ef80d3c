//! Integer points of dilated bodies.

use super::ConvexBody;

/// The exponent set `nP ∩ (Z^+)^d` of `Poly(nP)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePointSet {
    pub n: u32,
    /// Points in lexicographic order.
    pub points: Vec<Vec<u32>>,
}

impl LatticePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub(super) fn enumerate(body: &ConvexBody, n: u32) -> LatticePointSet {
    let dim = body.dim();
    let upper: Vec<u32> = (0..dim)
        .map(|axis| (f64::from(n) * body.axis_extent(axis) + 1e-9).floor() as u32)
        .collect();
    let scale = 1.0 / f64::from(n);
    let mut points = Vec::new();
    let mut j = vec![0u32; dim];
    let mut y = vec![0.0; dim];
    loop {
        for (yi, ji) in y.iter_mut().zip(&j) {
            *yi = f64::from(*ji) * scale;
        }
        if body.contains_unchecked(&y) {
            points.push(j.clone());
        }
        // odometer, last axis fastest
        let mut axis = dim;
        loop {
            if axis == 0 {
                return LatticePointSet { n, points };
            }
            axis -= 1;
            if j[axis] < upper[axis] {
                j[axis] += 1;
                break;
            }
            j[axis] = 0;
        }
    }
}
