//! P-extremal functions of Reinhardt compacts in `C^2` and their complex
//! Monge-Ampère measures.
//!
//! * [`convex_body`]: bodies `P ⊂ (R^+)^d`, support functions, `H_P`, volumes.
//! * [`reinhardt`]: torus-invariant compacts and monomial sup-norms.
//! * [`extremal`]: closed forms for the ball, monomial envelopes, relative
//!   extremal functions and the sandwich constants between them.
//! * [`monge_ampere`]: sphere quadrature, boundary 3-form calculus, total
//!   masses and toric (subgradient-image) sector masses.
//! * [`verify`]: the self-check suite behind `pextremal verify`.

pub mod convex_body;
pub mod error;
pub mod extremal;
pub mod monge_ampere;
pub(crate) mod planar;
pub mod quadrature;
pub mod reinhardt;
pub mod verify;

pub use convex_body::{ConvexBody, Exponent, LatticePointSet};
pub use error::{Error, Result};
pub use extremal::{ExtremalEvaluator, LogPolarGrid, MonomialEnvelope};
pub use monge_ampere::{BoundaryForm3, SectorMassReport, ToricMeasure};
pub use reinhardt::ReinhardtCompact;

pub use num_complex::Complex64;

/// A point of `C^2`.
pub type Point = [Complex64; 2];

/// The point `(r1, r2)` with real non-negative coordinates.
pub fn real_point(r1: f64, r2: f64) -> Point {
    [Complex64::new(r1, 0.0), Complex64::new(r2, 0.0)]
}

pub(crate) fn moduli(z: &Point) -> [f64; 2] {
    [z[0].norm(), z[1].norm()]
}
