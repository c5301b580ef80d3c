//! Monge-Ampère measures of `V_{P_q,B_2}` on the unit sphere.
//!
//! Everything is torus invariant, so sphere integrals reduce to one
//! dimension: in `z_j = r_j e^{iθ_j}`, `(r_1, r_2) = (cos ψ, sin ψ)` the
//! surface form is `dσ = 2 cos ψ sin ψ dψ dθ_1 dθ_2` with total mass `4π²`.

pub mod forms;
pub mod toric;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::convex_body::{ConvexBody, Exponent};
use crate::error::{Error, Result};
use crate::extremal::MonomialEnvelope;
use crate::quadrature::{integrate, QuadratureOptions};
use crate::reinhardt::ReinhardtCompact;
use crate::Point;

pub use forms::{reduce_boundary_form, wedge_density, BoundaryForm3, Branch, FormCoefficient};
pub use toric::{gradient_image_sector_mass, Atom, RasterSpec, ToricMeasure};

/// Default window for density estimates.
pub const DEFAULT_DENSITY_STEP: f64 = PI / 64.0;

const SPHERE_TOL: f64 = 1e-9;

fn four_pi_sq() -> f64 {
    4.0 * PI * PI
}

/// `4π² ∫_{ψ_1}^{ψ_2} f(ψ) 2 cos ψ sin ψ dψ`.
pub fn sphere_quadrature<F: Fn(f64) -> f64>(f: F, psi1: f64, psi2: f64) -> Result<f64> {
    toric::check_sector(psi1, psi2)?;
    let g = |psi: f64| f(psi) * 2.0 * psi.cos() * psi.sin();
    Ok(four_pi_sq() * integrate(g, psi1, psi2, QuadratureOptions::default()))
}

/// `f_∞` as a function of `ψ`: `1 / max(cos ψ, sin ψ)^4`.
pub fn density_pinf_psi(psi: f64) -> f64 {
    1.0 / psi.cos().max(psi.sin()).powi(4)
}

/// `f_∞(z) = 1 / max(|z_1|, |z_2|)^4` on the unit sphere.
pub fn density_pinf(z: &Point) -> Result<f64> {
    let (r1, r2) = (z[0].norm(), z[1].norm());
    let s = r1 * r1 + r2 * r2;
    if (s - 1.0).abs() > SPHERE_TOL {
        return Err(Error::OffSphere(s));
    }
    let (first, second) = (1.0 / r1.powi(4), 1.0 / r2.powi(4));
    if r1 == r2 {
        assert_eq!(first, second);
    }
    Ok(if r1 >= r2 { first } else { second })
}

/// `∫ (dd^c V_{P_q,B_2})^2 = 2!(4π²) Vol(P_q)`.
pub fn total_mass(q: Exponent) -> Result<f64> {
    Ok(2.0 * four_pi_sq() * ConvexBody::lq(q, 2)?.volume()?)
}

/// Closed-form `f_∞ dσ` mass of the sector `[0, ψ_0]`.
pub fn sector_mass_pinf(psi0: f64) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&psi0) {
        return Err(Error::AngleOutOfRange(psi0));
    }
    Ok(if psi0 <= FRAC_PI_4 {
        four_pi_sq() * psi0.tan().powi(2)
    } else {
        2.0 * four_pi_sq() - four_pi_sq() * (FRAC_PI_2 - psi0).tan().powi(2)
    })
}

/// Midpoint estimate of the density of `μ_{P_q,B_2}` at `ψ` from a degree-`n` envelope.
pub fn numeric_density(q: Exponent, n: u32, psi: f64, h: f64) -> Result<f64> {
    toric_measure(q, n, RasterSpec::default())?.density(psi, h)
}

/// The toric measure of the degree-`n` envelope for `(P_q, B_2)`.
pub fn toric_measure(q: Exponent, n: u32, raster: RasterSpec) -> Result<ToricMeasure> {
    let env = MonomialEnvelope::new(ConvexBody::lq(q, 2)?, ReinhardtCompact::unit_ball(), n)?;
    ToricMeasure::new(&env, raster)
}

/// Per-point outcome of a density comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicityPoint {
    pub psi: f64,
    pub lower: f64,
    pub upper: f64,
    /// `upper − lower + tol`; non-negative where the ordering holds.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    pub q1: Exponent,
    pub q2: Exponent,
    pub points: Vec<MonotonicityPoint>,
    pub passed: bool,
}

/// Checks `f_{q_1}(ψ) ≤ f_{q_2}(ψ) + tol` on the grid, both densities estimated
/// with window [`DEFAULT_DENSITY_STEP`].
pub fn measure_monotonicity_check(
    q1: Exponent,
    q2: Exponent,
    n: u32,
    psi_grid: &[f64],
    tol: f64,
) -> Result<MonotonicityReport> {
    let m1 = toric_measure(q1, n, RasterSpec::default())?;
    let m2 = if q1 == q2 { m1.clone() } else { toric_measure(q2, n, RasterSpec::default())? };
    let mut points = Vec::with_capacity(psi_grid.len());
    for &psi in psi_grid {
        let lower = m1.density(psi, DEFAULT_DENSITY_STEP)?;
        let upper = m2.density(psi, DEFAULT_DENSITY_STEP)?;
        points.push(MonotonicityPoint { psi, lower, upper, margin: upper - lower + tol });
    }
    let passed = points.iter().all(|p| p.margin >= 0.0);
    Ok(MonotonicityReport { q1, q2, points, passed })
}

/// Masses of an equal partition of `[0, π/2]` with per-sector mean densities.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorMassReport {
    pub sectors: Vec<(f64, f64, f64)>,
    pub total: f64,
    /// `(ψ, f(ψ))` at sector midpoints.
    pub density_samples: Vec<(f64, f64)>,
}

pub fn sector_mass_report(measure: &ToricMeasure, sectors: usize) -> Result<SectorMassReport> {
    if sectors == 0 {
        return Err(Error::InvalidParameter("need at least one sector".into()));
    }
    let edge = |k: usize| if k == sectors { FRAC_PI_2 } else { FRAC_PI_2 * k as f64 / sectors as f64 };
    let mut rows = Vec::with_capacity(sectors);
    let mut density_samples = Vec::with_capacity(sectors);
    for k in 0..sectors {
        let (a, b) = (edge(k), edge(k + 1));
        let mass = measure.sector_mass(a, b)?;
        density_samples.push((0.5 * (a + b), mass / sphere_quadrature(|_| 1.0, a, b)?));
        rows.push((a, b, mass));
    }
    let total = rows.iter().map(|r| r.2).sum();
    Ok(SectorMassReport { sectors: rows, total, density_samples })
}
