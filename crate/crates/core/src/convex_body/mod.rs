//! Convex bodies `P ⊂ (R^+)^d`: ℓ^q bodies and vertex polytopes.
//!
//! A body carries its indicator (support) function `φ_P(x) = sup_{y∈P} <x, y>`,
//! the logarithmic indicator `H_P(z) = φ_P(log|z_1|, …, log|z_d|)`, its volume,
//! the constant `k` of the hypothesis `P_1 ⊂ kP`, and the exponent sets
//! `nP ∩ (Z^+)^d` that index `Poly(nP)`.

mod lattice;
mod polytope;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureOptions};

pub use lattice::LatticePointSet;
pub use polytope::Polytope;

/// A point counts as inside a body when its defining inequality holds to
/// within this slack, so boundary lattice points such as `(n, 0) ∈ nP_q` are kept.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// Default search bound for [`ConvexBody::scaling_constant`].
pub const SCALING_SEARCH_BOUND: u64 = 1_000_000;

/// An exponent `q ∈ [1, ∞]`; `∞` is its own variant, never a float sentinel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn finite(q: f64) -> Result<Self> {
        if q.is_finite() && q >= 1.0 {
            Ok(Exponent::Finite(q))
        } else if q == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else {
            Err(Error::InvalidExponent(q))
        }
    }

    /// Hölder conjugate `q'` with `1/q + 1/q' = 1`.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(q) if q == 1.0 => Exponent::Infinity,
            Exponent::Finite(q) => Exponent::Finite(q / (q - 1.0)),
        }
    }

    /// `ℓ^q` norm of the absolute values of `v`.
    pub fn norm<I: IntoIterator<Item = f64>>(self, v: I) -> f64 {
        let abs: Vec<f64> = v.into_iter().map(f64::abs).collect();
        let max = abs.iter().copied().fold(0.0, f64::max);
        match self {
            Exponent::Infinity => max,
            Exponent::Finite(q) if q == 1.0 => abs.iter().sum(),
            Exponent::Finite(q) => {
                if max == 0.0 || !max.is_finite() {
                    return max;
                }
                let s: f64 = abs.iter().map(|a| (a / max).powf(q)).sum();
                max * s.powf(1.0 / q)
            }
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Finite(q) => q,
            Exponent::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(q) => write!(f, "{q}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" => Ok(Exponent::Infinity),
            other => {
                let q: f64 = other
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("cannot parse exponent {other:?}")))?;
                Exponent::finite(q)
            }
        }
    }
}

/// A compact convex body in the closed non-negative orthant.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexBody {
    /// `P_q = {x ∈ (R^+)^d : ‖x‖_q ≤ 1}`.
    Lq { q: Exponent, dim: usize },
    /// Convex hull of the listed vertices; the origin must be listed to be included.
    Polytope(Polytope),
}

impl ConvexBody {
    pub fn lq(q: Exponent, dim: usize) -> Result<Self> {
        if let Exponent::Finite(v) = q {
            Exponent::finite(v)?;
        }
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        Ok(ConvexBody::Lq { q, dim })
    }

    /// `P_q` in the plane.
    pub fn planar(q: Exponent) -> Self {
        ConvexBody::Lq { q, dim: 2 }
    }

    pub fn polytope(vertices: Vec<Vec<f64>>) -> Result<Self> {
        Polytope::new(vertices).map(ConvexBody::Polytope)
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Lq { dim, .. } => *dim,
            ConvexBody::Polytope(p) => p.dim(),
        }
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), got })
        }
    }

    /// Largest extent along `axis`; bounds lattice scans.
    pub(crate) fn axis_extent(&self, axis: usize) -> f64 {
        match self {
            ConvexBody::Lq { .. } => 1.0,
            ConvexBody::Polytope(p) => p.max_coordinate(axis),
        }
    }

    /// Per-axis upper corner of the bounding box (the lower corner is the origin).
    pub fn bounding_box(&self) -> Vec<f64> {
        (0..self.dim()).map(|a| self.axis_extent(a)).collect()
    }

    /// Membership with slack [`MEMBERSHIP_TOL`].
    pub fn contains(&self, y: &[f64]) -> Result<bool> {
        self.check_dim(y.len())?;
        Ok(self.contains_unchecked(y))
    }

    pub(crate) fn contains_unchecked(&self, y: &[f64]) -> bool {
        match self {
            ConvexBody::Lq { q, .. } => {
                y.iter().all(|&c| c >= -MEMBERSHIP_TOL)
                    && q.norm(y.iter().map(|c| c.max(0.0))) <= 1.0 + MEMBERSHIP_TOL
            }
            ConvexBody::Polytope(p) => p.contains(y, MEMBERSHIP_TOL),
        }
    }

    /// Indicator function `φ_P(x) = sup_{y∈P} <x, y>`.
    ///
    /// For `P_q` this is the dual norm of the positive part, `‖x^+‖_{q'}`.
    pub fn support_function(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        Ok(match self {
            ConvexBody::Lq { q, .. } => q.conjugate().norm(x.iter().map(|c| c.max(0.0))),
            ConvexBody::Polytope(p) => p.support(x),
        })
    }

    /// Logarithmic indicator `H_P(z) = φ_P(log|z_1|, …, log|z_d|)`.
    ///
    /// Coordinates with `z_i = 0` restrict the supremum to the face `{y_i = 0}`
    /// of `P`. The value is `f64::NEG_INFINITY` when that face is empty, which
    /// only happens for polytopes without a vertex on it.
    pub fn log_indicator(&self, z: &[Complex64]) -> Result<f64> {
        self.check_dim(z.len())?;
        let logs: Vec<Option<f64>> =
            z.iter().map(|c| if c.norm() == 0.0 { None } else { Some(c.norm().ln()) }).collect();
        Ok(match self {
            ConvexBody::Lq { q, .. } => {
                q.conjugate().norm(logs.iter().flatten().map(|c| c.max(0.0)))
            }
            ConvexBody::Polytope(p) => p
                .vertices()
                .iter()
                .filter(|v| logs.iter().zip(v.iter()).all(|(l, c)| l.is_some() || *c <= MEMBERSHIP_TOL))
                .map(|v| {
                    v.iter()
                        .zip(&logs)
                        .filter_map(|(c, l)| l.map(|l| c * l))
                        .sum::<f64>()
                })
                .fold(f64::NEG_INFINITY, f64::max),
        })
    }

    /// Euclidean `d`-volume.
    ///
    /// `P_q` uses `Γ(1+1/q)^d / Γ(1+d/q)`; polytopes are supported for `d ≤ 2`.
    pub fn volume(&self) -> Result<f64> {
        match self {
            ConvexBody::Lq { q: Exponent::Infinity, .. } => Ok(1.0),
            ConvexBody::Lq { q: Exponent::Finite(q), dim } => {
                let d = *dim as f64;
                Ok(gamma(1.0 + 1.0 / q).powf(d) / gamma(1.0 + d / q))
            }
            ConvexBody::Polytope(p) => p.volume(),
        }
    }

    /// Smallest `k ∈ Z^+` with `P_1 ⊂ kP`, searching up to [`SCALING_SEARCH_BOUND`].
    pub fn scaling_constant(&self) -> Option<u64> {
        self.scaling_constant_within(SCALING_SEARCH_BOUND)
    }

    /// `P_1` is the hull of `0, e_1, …, e_d`, so `P_1 ⊂ kP` iff `0 ∈ P` and every
    /// `e_i / k ∈ P`; the latter is monotone in `k` once `0 ∈ P`.
    pub fn scaling_constant_within(&self, bound: u64) -> Option<u64> {
        let dim = self.dim();
        if bound == 0 || !self.contains_unchecked(&vec![0.0; dim]) {
            return None;
        }
        let fits = |k: u64| {
            (0..dim).all(|i| {
                let mut e = vec![0.0; dim];
                e[i] = 1.0 / k as f64;
                self.contains_unchecked(&e)
            })
        };
        if !fits(bound) {
            return None;
        }
        let (mut lo, mut hi) = (1u64, bound);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if fits(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo)
    }

    /// All integer points of `nP`.
    pub fn lattice_points(&self, n: u32) -> Result<LatticePointSet> {
        if n == 0 {
            return Err(Error::InvalidParameter("dilation n must be at least 1".into()));
        }
        Ok(lattice::enumerate(self, n))
    }
}

/// Area of `P_q ⊂ (R^+)^2` as `∫_0^1 (1 - x^q)^{1/q} dx`; the quadrature route
/// that cross-checks the Γ closed form.
pub fn lq_area_by_quadrature(q: Exponent) -> f64 {
    match q {
        Exponent::Infinity => 1.0,
        Exponent::Finite(q) => integrate(
            |x: f64| (1.0 - x.powf(q)).max(0.0).powf(1.0 / q),
            0.0,
            1.0,
            QuadratureOptions { rel_tol: 1e-12, abs_tol: 1e-15, max_depth: 60 },
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, FRAC_1_SQRT_2, PI};

    fn p(q: f64) -> ConvexBody {
        ConvexBody::planar(Exponent::finite(q).unwrap())
    }

    fn pinf() -> ConvexBody {
        ConvexBody::planar(Exponent::Infinity)
    }

    #[test]
    fn exponent_parsing_and_conjugates() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("2".parse::<Exponent>().unwrap(), Exponent::Finite(2.0));
        assert!("0.5".parse::<Exponent>().is_err());
        assert!("nan".parse::<Exponent>().is_err());
        assert_eq!(Exponent::Finite(1.0).conjugate(), Exponent::Infinity);
        assert_eq!(Exponent::Infinity.conjugate(), Exponent::Finite(1.0));
        assert_eq!(Exponent::Finite(2.0).conjugate(), Exponent::Finite(2.0));
        assert_eq!(Exponent::Finite(3.0).conjugate(), Exponent::Finite(1.5));
    }

    #[test]
    fn membership_examples() {
        assert!(p(2.0).contains(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap());
        assert!(!p(1.0).contains(&[0.6, 0.6]).unwrap());
        let simplex =
            ConvexBody::polytope(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(simplex.contains(&[0.3, 0.3]).unwrap());
        assert!(matches!(
            simplex.contains(&[0.3]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
        assert!(!pinf().contains(&[-0.1, 0.5]).unwrap());
    }

    #[test]
    fn support_function_examples() {
        assert_eq!(p(1.0).support_function(&[3.0, 1.0]).unwrap(), 3.0);
        assert_eq!(pinf().support_function(&[1.0, 1.0]).unwrap(), 2.0);
        assert!((p(2.0).support_function(&[3.0, 4.0]).unwrap() - 5.0).abs() < 1e-14);
        assert_eq!(p(1.0).support_function(&[-1.0, -2.0]).unwrap(), 0.0);
        let simplex =
            ConvexBody::polytope(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(simplex.support_function(&[3.0, 1.0]).unwrap(), 3.0);
        assert_eq!(simplex.support_function(&[-1.0, -2.0]).unwrap(), 0.0);
    }

    #[test]
    fn log_indicator_examples() {
        let c = |a: f64, b: f64| [Complex64::new(a, 0.0), Complex64::new(b, 0.0)];
        assert!((p(1.0).log_indicator(&c(2.0, 0.5)).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((pinf().log_indicator(&c(2.0, 2.0)).unwrap() - 4f64.ln()).abs() < 1e-15);
        assert!((p(2.0).log_indicator(&c(E, 1.0)).unwrap() - 1.0).abs() < 1e-15);
        // phase does not matter
        let rotated = [Complex64::from_polar(2.0, 1.0), Complex64::from_polar(0.5, -2.0)];
        assert!((p(1.0).log_indicator(&rotated).unwrap() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn log_indicator_on_coordinate_axes() {
        let z = [Complex64::new(0.0, 0.0), Complex64::new(3.0, 0.0)];
        assert!((pinf().log_indicator(&z).unwrap() - 3f64.ln()).abs() < 1e-15);
        // the face {y_1 = 0} of this segment is empty
        let seg = ConvexBody::polytope(vec![vec![1.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(seg.log_indicator(&z).unwrap(), f64::NEG_INFINITY);
        let simplex =
            ConvexBody::polytope(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!((simplex.log_indicator(&z).unwrap() - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn volume_examples() {
        assert!((p(1.0).volume().unwrap() - 0.5).abs() < 1e-14);
        assert_eq!(pinf().volume().unwrap(), 1.0);
        assert!((p(2.0).volume().unwrap() - PI / 4.0).abs() < 1e-14);
        // octant of the unit ball in R^3
        let b3 = ConvexBody::lq(Exponent::Finite(2.0), 3).unwrap();
        assert!((b3.volume().unwrap() - PI / 6.0).abs() < 1e-13);
    }

    #[test]
    fn scaling_constant_examples() {
        for q in [1.0, 1.5, 2.0, 7.0] {
            assert_eq!(p(q).scaling_constant(), Some(1));
        }
        assert_eq!(pinf().scaling_constant(), Some(1));
        let half = ConvexBody::polytope(vec![vec![0.0, 0.0], vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        assert_eq!(half.scaling_constant(), Some(2));
        let seg = ConvexBody::polytope(vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(seg.scaling_constant(), None);
        let no_origin = ConvexBody::polytope(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(no_origin.scaling_constant(), None);
        let thin = ConvexBody::polytope(vec![vec![0.0, 0.0], vec![0.3, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(thin.scaling_constant(), Some(4));
    }

    #[test]
    fn lattice_point_examples() {
        assert_eq!(p(1.0).lattice_points(3).unwrap().len(), 10);
        assert_eq!(pinf().lattice_points(3).unwrap().len(), 16);
        let pts = p(2.0).lattice_points(2).unwrap().points;
        let expected: Vec<Vec<u32>> =
            vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![2, 0]];
        assert_eq!(pts, expected);
        assert!(p(1.0).lattice_points(0).is_err());
        let simplex =
            ConvexBody::polytope(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(simplex.lattice_points(7).unwrap().len(), 36);
    }

    #[test]
    fn quadrature_area_matches_gamma_form() {
        for q in [1.0, 1.5, 2.0, 3.0] {
            let e = Exponent::Finite(q);
            let closed = ConvexBody::planar(e).volume().unwrap();
            let quad = lq_area_by_quadrature(e);
            assert!((closed - quad).abs() <= 1e-8 * closed, "q = {q}: {closed} vs {quad}");
        }
    }
}
