use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::{real_point, Point};

/// A tensor grid in `(ψ, ρ)` with points `z = e^ρ (cos ψ, sin ψ)`.
///
/// Both axes use cell midpoints: `ψ` over `(0, π/2)` and `ρ` over
/// `(rho_lo, rho_hi)`, so neither the coordinate axes nor the end radii are hit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogPolarGrid {
    pub n_psi: usize,
    pub n_rho: usize,
    pub rho_lo: f64,
    pub rho_hi: f64,
}

/// One grid node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub psi: f64,
    pub rho: f64,
    pub z: Point,
}

impl Default for LogPolarGrid {
    /// 100 × 100 nodes in the shell `1 < |z| < e`.
    fn default() -> Self {
        Self { n_psi: 100, n_rho: 100, rho_lo: 0.0, rho_hi: 1.0 }
    }
}

impl LogPolarGrid {
    pub fn new(n_psi: usize, n_rho: usize, rho_lo: f64, rho_hi: f64) -> Result<Self> {
        if n_psi == 0 || n_rho == 0 {
            return Err(Error::InvalidParameter("grid needs at least one node per axis".into()));
        }
        if !(rho_lo.is_finite() && rho_hi.is_finite() && rho_lo < rho_hi) {
            return Err(Error::InvalidParameter(format!(
                "invalid rho range [{rho_lo}, {rho_hi}]"
            )));
        }
        Ok(Self { n_psi, n_rho, rho_lo, rho_hi })
    }

    /// The fixed 100-point exterior set used for envelope convergence:
    /// 10 angles times `ρ ∈ {0.1, 0.3, …, 1.9}`.
    pub fn exterior_test_set() -> Self {
        Self { n_psi: 10, n_rho: 10, rho_lo: 0.0, rho_hi: 2.0 }
    }

    pub fn len(&self) -> usize {
        self.n_psi * self.n_rho
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn psi_values(&self) -> Vec<f64> {
        midpoints(0.0, FRAC_PI_2, self.n_psi)
    }

    pub fn rho_values(&self) -> Vec<f64> {
        midpoints(self.rho_lo, self.rho_hi, self.n_rho)
    }

    /// All nodes, `ψ`-major.
    pub fn points(&self) -> Vec<GridPoint> {
        let rhos = self.rho_values();
        self.psi_values()
            .into_iter()
            .flat_map(|psi| {
                rhos.iter().map(move |&rho| {
                    let r = rho.exp();
                    GridPoint { psi, rho, z: real_point(r * psi.cos(), r * psi.sin()) }
                })
            })
            .collect()
    }
}

fn midpoints(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let h = (hi - lo) / n as f64;
    (0..n).map(|i| lo + (i as f64 + 0.5) * h).collect()
}
