//! Closed forms of `V_{P_∞,B_2}` and `V_{P_1,B_2}`.

use std::f64::consts::LN_2;

use crate::{moduli, Point};

/// Pairwise agreement required of branch values on the seams of `V_{P_∞,B_2}`.
pub const SEAM_TOL: f64 = 1e-12;

/// The pieces of the piecewise formula for `V_{P_∞,B_2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PinfBranch {
    /// `|z_1|^2 + |z_2|^2 ≤ 1`: value `0`.
    Inside,
    /// `|z_1|^2 ≤ 1/2 ≤ |z_2|^2`: `½{log|z_2|^2 − log(1 − |z_1|^2)}`.
    SecondDominant,
    /// `|z_2|^2 ≤ 1/2 ≤ |z_1|^2`: `½{log|z_1|^2 − log(1 − |z_2|^2)}`.
    FirstDominant,
    /// `|z_1|^2, |z_2|^2 ≥ 1/2`: `log|z_1| + log|z_2| + log 2`.
    Corner,
}

impl PinfBranch {
    /// Evaluates this branch at squared moduli `(a, b)` without checking its conditions.
    pub fn value(self, a: f64, b: f64) -> f64 {
        match self {
            PinfBranch::Inside => 0.0,
            PinfBranch::SecondDominant => 0.5 * (b.ln() - (1.0 - a).ln()),
            PinfBranch::FirstDominant => 0.5 * (a.ln() - (1.0 - b).ln()),
            PinfBranch::Corner => 0.5 * (a.ln() + b.ln()) + LN_2,
        }
    }

    /// Whether the closed conditions of this branch hold at squared moduli `(a, b)`.
    pub fn applies(self, a: f64, b: f64) -> bool {
        let outside = a + b >= 1.0;
        match self {
            PinfBranch::Inside => a + b <= 1.0,
            PinfBranch::SecondDominant => outside && a <= 0.5 && b >= 0.5,
            PinfBranch::FirstDominant => outside && b <= 0.5 && a >= 0.5,
            PinfBranch::Corner => outside && a >= 0.5 && b >= 0.5,
        }
    }
}

const BRANCHES: [PinfBranch; 4] = [
    PinfBranch::Inside,
    PinfBranch::SecondDominant,
    PinfBranch::FirstDominant,
    PinfBranch::Corner,
];

/// Every branch whose closed conditions hold at `z`, with its value.
pub fn pinf_branches(z: &Point) -> Vec<(PinfBranch, f64)> {
    let [r1, r2] = moduli(z);
    pinf_branches_sq(r1 * r1, r2 * r2)
}

/// [`pinf_branches`] at squared moduli `(a, b)`, so seams can be hit exactly.
pub fn pinf_branches_sq(a: f64, b: f64) -> Vec<(PinfBranch, f64)> {
    BRANCHES
        .iter()
        .filter(|br| br.applies(a, b))
        .map(|&br| (br, br.value(a, b)))
        .collect()
}

/// Largest pairwise disagreement between applicable branches at squared
/// moduli `(a, b)` (zero off the seams).
pub fn pinf_seam_residual(a: f64, b: f64) -> f64 {
    let values = pinf_branches_sq(a, b);
    let mut worst = 0.0f64;
    for (i, (_, u)) in values.iter().enumerate() {
        for (_, v) in &values[i + 1..] {
            worst = worst.max((u - v).abs());
        }
    }
    worst
}

/// `V_{P_∞,B_2}(z)`. On seams every applicable branch is evaluated and their
/// agreement is asserted in debug builds.
pub fn v_pinf_ball(z: &Point) -> f64 {
    let values = pinf_branches(z);
    let first = values[0].1;
    debug_assert!(
        values.iter().all(|(_, v)| (v - first).abs() <= SEAM_TOL * first.abs().max(1.0)),
        "branches disagree at {z:?}: {values:?}"
    );
    first
}

/// `V_{P_1,B_2}(z) = max(0, log |z|)`.
pub fn v_p1_ball(z: &Point) -> f64 {
    let [r1, r2] = moduli(z);
    (0.5 * (r1 * r1 + r2 * r2).ln()).max(0.0)
}
