use crate::error::{Error, Result};
use crate::extremal::{v_p1_ball, ExtremalEvaluator, LogPolarGrid};
use crate::{real_point, Point};

/// Relative extremal function `u_{E,Ω}` for `E = {|z| ≤ r}`, `Ω = {|z| < R}`:
/// `max(−1, log(|z|/R) / log(R/r))`.
pub fn relative_extremal_ball(r: f64, big_r: f64, z: &Point) -> Result<f64> {
    if !(r > 0.0 && big_r > r && big_r.is_finite()) {
        return Err(Error::InvalidParameter(format!("need 0 < r < R, got r = {r}, R = {big_r}")));
    }
    let modulus = (z[0].norm_sqr() + z[1].norm_sqr()).sqrt();
    if modulus > big_r * (1.0 + 1e-12) {
        return Err(Error::OutsideDomain { modulus, radius: big_r });
    }
    Ok(((modulus / big_r).ln() / (big_r / r).ln()).max(-1.0))
}

/// Empirical constants with `m (u_{E,Ω} + 1) ≤ V ≤ M (u_{E,Ω} + 1)` on a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichConstants {
    pub m: f64,
    pub big_m: f64,
    pub samples: usize,
}

/// Min and max of `V(z) / (u_{B_2,Ω}(z) + 1)` over grid nodes in `Ω ∖ B_2`,
/// `Ω` the ball of radius `outer_radius`. Nodes outside that shell are skipped.
pub fn sandwich_constants(
    evaluator: &ExtremalEvaluator,
    outer_radius: f64,
    grid: &LogPolarGrid,
) -> Result<SandwichConstants> {
    if !(outer_radius > 1.0) {
        return Err(Error::InvalidParameter(format!("outer radius must exceed 1, got {outer_radius}")));
    }
    let log_r = outer_radius.ln();
    let mut m = f64::INFINITY;
    let mut big_m = 0.0f64;
    let mut samples = 0;
    for p in grid.points() {
        if p.rho <= 0.0 || p.rho >= log_r {
            continue;
        }
        let v = evaluator.evaluate(&p.z);
        let u = relative_extremal_ball(1.0, outer_radius, &p.z)?;
        let ratio = v / (u + 1.0);
        if !ratio.is_finite() || ratio <= 0.0 {
            return Err(Error::NonFiniteRatio { psi: p.psi, rho: p.rho });
        }
        m = m.min(ratio);
        big_m = big_m.max(ratio);
        samples += 1;
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("no grid node lies in the shell 1 < |z| < R".into()));
    }
    Ok(SandwichConstants { m, big_m, samples })
}

/// `max |V_{P_1,B_2} − C (u_{B_2,Ω} + 1)|` over the grid, with `Ω = {|z| < e^C}`;
/// the two sides agree identically. Nodes outside `Ω` are skipped.
pub fn equality_case_residual(c: f64, grid: &LogPolarGrid) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("C must be positive, got {c}")));
    }
    let big_r = c.exp();
    let mut worst = 0.0f64;
    for p in grid.points() {
        if p.rho > c {
            continue;
        }
        let u = relative_extremal_ball(1.0, big_r, &p.z)?;
        worst = worst.max((v_p1_ball(&p.z) - c * (u + 1.0)).abs());
    }
    Ok(worst)
}

/// The equality-case residual at the single point `e^ρ (cos ψ, sin ψ)`.
pub fn equality_case_residual_at(c: f64, psi: f64, rho: f64) -> Result<f64> {
    let r = rho.exp();
    let z = real_point(r * psi.cos(), r * psi.sin());
    let u = relative_extremal_ball(1.0, c.exp(), &z)?;
    Ok((v_p1_ball(&z) - c * (u + 1.0)).abs())
}
