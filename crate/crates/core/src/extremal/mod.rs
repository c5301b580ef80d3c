//! Evaluation of `V_{P,K}`: closed forms for the unit ball, monomial
//! envelopes for general torus-invariant `K`, and relative extremal functions
//! of ball pairs.

mod closed_form;
mod envelope;
mod grid;
mod relative;

use rayon::prelude::*;

use crate::convex_body::{ConvexBody, Exponent};
use crate::error::Result;
use crate::reinhardt::ReinhardtCompact;
use crate::Point;

pub use closed_form::{
    pinf_branches, pinf_branches_sq, pinf_seam_residual, v_p1_ball, v_pinf_ball, PinfBranch, SEAM_TOL,
};
pub use envelope::{monomial_envelope, EnvelopeTerm, MonomialEnvelope};
pub use grid::{GridPoint, LogPolarGrid};
pub use relative::{
    equality_case_residual, equality_case_residual_at, relative_extremal_ball, sandwich_constants,
    SandwichConstants,
};

/// Evaluates `V_{P,K}` for one fixed pair `(P, K)`.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtremalEvaluator {
    ClosedFormPInfBall,
    ClosedFormP1Ball,
    MonomialEnvelope(MonomialEnvelope),
}

impl ExtremalEvaluator {
    /// Uses a closed form when `(P, K)` is `(P_∞, B_2)` or `(P_1, B_2)` and
    /// `prefer_envelope` is false; otherwise builds a degree-`n` envelope.
    pub fn select(body: &ConvexBody, set: &ReinhardtCompact, n: u32, prefer_envelope: bool) -> Result<Self> {
        let unit_ball = matches!(set, ReinhardtCompact::EuclideanBall { radius } if *radius == 1.0);
        if unit_ball && !prefer_envelope {
            match body {
                ConvexBody::Lq { q: Exponent::Infinity, dim: 2 } => {
                    return Ok(ExtremalEvaluator::ClosedFormPInfBall)
                }
                ConvexBody::Lq { q: Exponent::Finite(q), dim: 2 } if *q == 1.0 => {
                    return Ok(ExtremalEvaluator::ClosedFormP1Ball)
                }
                _ => {}
            }
        }
        MonomialEnvelope::new(body.clone(), set.clone(), n).map(ExtremalEvaluator::MonomialEnvelope)
    }

    pub fn evaluate(&self, z: &Point) -> f64 {
        match self {
            ExtremalEvaluator::ClosedFormPInfBall => v_pinf_ball(z),
            ExtremalEvaluator::ClosedFormP1Ball => v_p1_ball(z),
            ExtremalEvaluator::MonomialEnvelope(env) => env.evaluate(z),
        }
    }
}

/// Smallest `c` with `V ≤ H_P + c` on the grid, i.e. `max (V − H_P)`.
pub fn class_bound_gap(evaluator: &ExtremalEvaluator, body: &ConvexBody, grid: &LogPolarGrid) -> Result<f64> {
    let mut worst = f64::NEG_INFINITY;
    for p in grid.points() {
        let h = body.log_indicator(&p.z)?;
        worst = worst.max(evaluator.evaluate(&p.z) - h);
    }
    Ok(worst)
}

/// `max |envelope_n − reference|` over the grid for each degree `n`;
/// envelopes are built in parallel.
pub fn convergence_errors(
    body: &ConvexBody,
    set: &ReinhardtCompact,
    reference: &ExtremalEvaluator,
    degrees: &[u32],
    grid: &LogPolarGrid,
) -> Result<Vec<(u32, f64)>> {
    let points = grid.points();
    degrees
        .par_iter()
        .map(|&n| {
            let env = MonomialEnvelope::new(body.clone(), set.clone(), n)?;
            let err = points
                .iter()
                .map(|p| (env.evaluate(&p.z) - reference.evaluate(&p.z)).abs())
                .fold(0.0, f64::max);
            Ok((n, err))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real_point;
    use std::f64::consts::LN_2;

    #[test]
    fn selection_prefers_closed_forms() {
        let ball = ReinhardtCompact::unit_ball();
        let pinf = ConvexBody::planar(Exponent::Infinity);
        let p1 = ConvexBody::planar(Exponent::Finite(1.0));
        assert_eq!(
            ExtremalEvaluator::select(&pinf, &ball, 4, false).unwrap(),
            ExtremalEvaluator::ClosedFormPInfBall
        );
        assert_eq!(ExtremalEvaluator::select(&p1, &ball, 4, false).unwrap(), ExtremalEvaluator::ClosedFormP1Ball);
        assert!(matches!(
            ExtremalEvaluator::select(&pinf, &ball, 4, true).unwrap(),
            ExtremalEvaluator::MonomialEnvelope(_)
        ));
        let big = ReinhardtCompact::ball(2.0).unwrap();
        assert!(matches!(
            ExtremalEvaluator::select(&pinf, &big, 4, false).unwrap(),
            ExtremalEvaluator::MonomialEnvelope(_)
        ));
    }

    #[test]
    fn class_bound_constants() {
        let grid = LogPolarGrid::new(40, 40, -2.0, 9.2).unwrap();
        let gap = class_bound_gap(
            &ExtremalEvaluator::ClosedFormPInfBall,
            &ConvexBody::planar(Exponent::Infinity),
            &grid,
        )
        .unwrap();
        assert!(gap <= LN_2 + 1e-12, "{gap}");
        let gap = class_bound_gap(
            &ExtremalEvaluator::ClosedFormP1Ball,
            &ConvexBody::planar(Exponent::Finite(1.0)),
            &grid,
        )
        .unwrap();
        assert!(gap <= 0.5 * LN_2 + 1e-12, "{gap}");
    }

    #[test]
    fn envelope_agrees_with_closed_form_at_corner() {
        let ev = ExtremalEvaluator::select(
            &ConvexBody::planar(Exponent::Infinity),
            &ReinhardtCompact::unit_ball(),
            1,
            true,
        )
        .unwrap();
        let z = real_point(1.0, 1.0);
        assert!((ev.evaluate(&z) - v_pinf_ball(&z)).abs() < 1e-15);
    }
}
