//! Runtime self-checks: each compares two independent routes to the same
//! quantity, or checks an ordering the theory guarantees.

use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_4, LN_2, PI};

use num_complex::Complex64;

use crate::convex_body::{lq_area_by_quadrature, ConvexBody, Exponent};
use crate::error::Result;
use crate::extremal::{
    class_bound_gap, convergence_errors, equality_case_residual, pinf_seam_residual, sandwich_constants,
    v_p1_ball, v_pinf_ball, ExtremalEvaluator, LogPolarGrid, MonomialEnvelope,
};
use crate::monge_ampere::forms::{ddc_u_coefficient, surface_form};
use crate::monge_ampere::{
    density_pinf, density_pinf_psi, measure_monotonicity_check, reduce_boundary_form, sector_mass_pinf,
    sector_mass_report, sphere_quadrature, toric_measure, total_mass, wedge_density, BoundaryForm3, Branch,
    RasterSpec,
};
use crate::reinhardt::{monomial_norm_ball_closed, ReinhardtCompact};
use crate::{real_point, Point};

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome { name, passed, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn sphere_point(psi: f64, t1: f64, t2: f64) -> Point {
    [Complex64::from_polar(psi.cos(), t1), Complex64::from_polar(psi.sin(), t2)]
}

/// Runs every check, in a fixed order.
pub fn run_all() -> Vec<CheckOutcome> {
    let checks: [(&'static str, fn() -> Result<CheckOutcome>); 17] = [
        ("surface_mass", surface_mass),
        ("pinf_density_mass", pinf_density_mass),
        ("total_mass_formula", total_mass_formula),
        ("support_function_routes", support_function_routes),
        ("lattice_counts", lattice_counts),
        ("ball_monomial_norms", ball_monomial_norms),
        ("closed_form_values", closed_form_values),
        ("seam_agreement", seam_agreement),
        ("class_bounds", class_bounds),
        ("envelope_convergence", envelope_convergence),
        ("envelope_orderings", envelope_orderings),
        ("toric_masses", toric_masses),
        ("measure_monotonicity", measure_monotonicity),
        ("proposition_two", proposition_two),
        ("form_reduction", form_reduction),
        ("form_finite_differences", form_finite_differences),
        ("branch_densities", branch_densities),
    ];
    checks
        .iter()
        .map(|(name, check)| check().unwrap_or_else(|e| outcome(name, false, format!("check aborted: {e}"))))
        .collect()
}

fn surface_mass() -> Result<CheckOutcome> {
    let s = sphere_quadrature(|_| 1.0, 0.0, FRAC_PI_2)?;
    let half = sphere_quadrature(|_| 1.0, 0.0, FRAC_PI_4)?;
    let err = rel(s, 4.0 * PI * PI).max(rel(2.0 * half, s));
    Ok(outcome("surface_mass", err <= 1e-9, format!("int dsigma = {s:.16e}, rel err {err:.2e}")))
}

fn pinf_density_mass() -> Result<CheckOutcome> {
    let full = sphere_quadrature(density_pinf_psi, 0.0, FRAC_PI_2)?;
    let quarter = sphere_quadrature(density_pinf_psi, 0.0, FRAC_PI_4)?;
    let closed = sector_mass_pinf(FRAC_PI_4)?;
    let err = rel(full, 8.0 * PI * PI).max(rel(quarter, closed)).max(rel(closed, 4.0 * PI * PI));
    Ok(outcome(
        "pinf_density_mass",
        err <= 1e-9,
        format!("int f_inf dsigma = {full:.16e}, [0,pi/4] quadrature {quarter:.16e} vs closed {closed:.16e}"),
    ))
}

fn total_mass_formula() -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for q in [Exponent::Finite(1.0), Exponent::Finite(1.5), Exponent::Finite(2.0), Exponent::Finite(3.0), Exponent::Infinity] {
        let vol = ConvexBody::lq(q, 2)?.volume()?;
        worst = worst.max(rel(vol, lq_area_by_quadrature(q)));
        worst = worst.max(rel(total_mass(q)?, 8.0 * PI * PI * vol));
    }
    let named = rel(ConvexBody::planar(Exponent::Finite(2.0)).volume()?, FRAC_PI_4)
        .max(rel(ConvexBody::planar(Exponent::Finite(1.0)).volume()?, 0.5))
        .max(rel(ConvexBody::planar(Exponent::Infinity).volume()?, 1.0));
    let err = worst.max(named);
    Ok(outcome("total_mass_formula", err <= 1e-8, format!("max rel err {err:.2e}")))
}

fn support_function_routes() -> Result<CheckOutcome> {
    // dual norm against a scan of the boundary of P_q
    let mut worst: f64 = 0.0;
    for q in [Exponent::Finite(1.0), Exponent::Finite(1.5), Exponent::Finite(2.0), Exponent::Finite(3.0), Exponent::Infinity] {
        let body = ConvexBody::planar(q);
        for k in 0..16 {
            let t = 2.0 * PI * f64::from(k) / 16.0 + 0.1;
            let x = [t.cos() * 2.0, t.sin() * 1.5];
            let phi = body.support_function(&x)?;
            let m = 20_000;
            let scan = (0..=m)
                .map(|i| {
                    let a = FRAC_PI_2 * f64::from(i) / f64::from(m);
                    let (c, s) = (a.cos(), a.sin());
                    let r = q.norm([c, s]);
                    (x[0] * c + x[1] * s) / r
                })
                .fold(0.0, f64::max);
            worst = worst.max((phi - scan).abs() / (1.0 + phi.abs()));
        }
    }
    Ok(outcome("support_function_routes", worst <= 1e-3, format!("max scaled gap {worst:.2e}")))
}

fn lattice_counts() -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    for q in [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Finite(3.0), Exponent::Infinity] {
        let body = ConvexBody::planar(q);
        for n in [1u32, 2, 3, 7, 20, 50] {
            let listed = body.lattice_points(n)?.len();
            let mut brute = 0;
            for j1 in 0..=n {
                for j2 in 0..=n {
                    let y = [f64::from(j1) / f64::from(n), f64::from(j2) / f64::from(n)];
                    if q.norm(y) <= 1.0 + 1e-12 {
                        brute += 1;
                    }
                }
            }
            if listed != brute {
                failures.push(format!("q={q} n={n}: {listed} vs {brute}"));
            }
        }
    }
    Ok(outcome("lattice_counts", failures.is_empty(), failures.join("; ")))
}

fn ball_monomial_norms() -> Result<CheckOutcome> {
    let ball = ReinhardtCompact::unit_ball();
    let mut worst: f64 = 0.0;
    for j1 in 0..=100u32 {
        for j2 in 0..=(100 - j1) {
            worst = worst.max(rel(ball.monomial_norm([j1, j2]), monomial_norm_ball_closed([j1, j2])));
        }
    }
    Ok(outcome("ball_monomial_norms", worst <= 1e-10, format!("max rel gap {worst:.2e}")))
}

fn closed_form_values() -> Result<CheckOutcome> {
    let a = v_pinf_ball(&real_point(1.0, 1.0));
    let b = v_pinf_ball(&real_point(0.0, 2f64.sqrt()));
    let c = v_p1_ball(&real_point(2.0, 0.0));
    let err = (a - LN_2).abs().max((b - 0.5 * LN_2).abs()).max((c - LN_2).abs());
    Ok(outcome("closed_form_values", err <= 4.0 * f64::EPSILON, format!("V(1,1) = {a:.16e}, V(0,sqrt2) = {b:.16e}")))
}

fn seam_agreement() -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for k in 0..1000 {
        // squared moduli on the seams |z_1|^2 = 1/2 or |z_2|^2 = 1/2
        let t = 0.5 + 50.0 * f64::from(k / 2) / 500.0;
        let (a, b) = if k % 2 == 0 { (0.5, t) } else { (t, 0.5) };
        worst = worst.max(pinf_seam_residual(a, b));
    }
    Ok(outcome("seam_agreement", worst <= 1e-12, format!("max residual {worst:.2e} on 1000 seam points")))
}

fn class_bounds() -> Result<CheckOutcome> {
    let grid = LogPolarGrid::new(50, 50, -3.0, 4.0 * 10f64.ln())?;
    let pinf = class_bound_gap(&ExtremalEvaluator::ClosedFormPInfBall, &ConvexBody::planar(Exponent::Infinity), &grid)?;
    let p1 = class_bound_gap(&ExtremalEvaluator::ClosedFormP1Ball, &ConvexBody::planar(Exponent::Finite(1.0)), &grid)?;
    let passed = pinf <= LN_2 + 1e-12 && p1 <= 0.5 * LN_2 + 1e-12;
    Ok(outcome("class_bounds", passed, format!("max(V - H_P): P_inf {pinf:.6}, P_1 {p1:.6}")))
}

fn envelope_convergence() -> Result<CheckOutcome> {
    let grid = LogPolarGrid::exterior_test_set();
    let ball = ReinhardtCompact::unit_ball();
    let degrees = [4, 8, 16, 32, 64];
    let mut detail = Vec::new();
    let mut passed = true;
    for (label, body, reference) in [
        ("P_inf", ConvexBody::planar(Exponent::Infinity), ExtremalEvaluator::ClosedFormPInfBall),
        ("P_1", ConvexBody::planar(Exponent::Finite(1.0)), ExtremalEvaluator::ClosedFormP1Ball),
    ] {
        let errs = convergence_errors(&body, &ball, &reference, &degrees, &grid)?;
        let monotone = errs.windows(2).all(|w| w[1].1 <= w[0].1);
        let last = errs.last().map_or(f64::INFINITY, |e| e.1);
        passed &= monotone && last <= 0.05;
        detail.push(format!("{label}: {:?}", errs.iter().map(|e| format!("{:.4}", e.1)).collect::<Vec<_>>()));
    }
    Ok(outcome("envelope_convergence", passed, detail.join("; ")))
}

fn envelope_orderings() -> Result<CheckOutcome> {
    let grid = LogPolarGrid::new(12, 12, -0.5, 2.0)?;
    let ball = ReinhardtCompact::unit_ball();
    let big = ReinhardtCompact::ball(2.0)?;
    let env = |q, set: &ReinhardtCompact, n| MonomialEnvelope::new(ConvexBody::planar(q), set.clone(), n);
    let (p2_8, pinf_8) = (env(Exponent::Finite(2.0), &ball, 8)?, env(Exponent::Infinity, &ball, 8)?);
    let (p2_16, p2_big) = (env(Exponent::Finite(2.0), &ball, 16)?, env(Exponent::Finite(2.0), &big, 8)?);
    let mut failures = 0;
    for p in grid.points() {
        let z = &p.z;
        let base = p2_8.evaluate(z);
        let slack = 1e-12 * (1.0 + base.abs());
        if base > pinf_8.evaluate(z) + slack
            || base > p2_16.evaluate(z) + slack
            || p2_big.evaluate(z) > base + slack
            || v_p1_ball(z) > v_pinf_ball(z) + slack
            || base < -slack
        {
            failures += 1;
        }
    }
    Ok(outcome("envelope_orderings", failures == 0, format!("{failures} violations on {} points", grid.len())))
}

fn toric_masses() -> Result<CheckOutcome> {
    let mut detail = Vec::new();
    let mut passed = true;
    for q in [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinity] {
        let m = toric_measure(q, 64, RasterSpec::default())?;
        let report = sector_mass_report(&m, 32)?;
        let expected = total_mass(q)?;
        let err = rel(report.total, expected);
        let all_positive = report.sectors.iter().all(|s| s.2 > 0.0);
        passed &= err <= 1e-2 && all_positive;
        if q == Exponent::Infinity {
            let quarter = m.sector_mass(0.0, FRAC_PI_4)?;
            let qerr = rel(quarter, sector_mass_pinf(FRAC_PI_4)?);
            passed &= qerr <= 1e-2;
            detail.push(format!("P_inf [0,pi/4] rel err {qerr:.2e}"));
        }
        detail.push(format!("q={q}: 32-sector total rel err {err:.2e}, all sectors positive: {all_positive}"));
    }
    Ok(outcome("toric_masses", passed, detail.join("; ")))
}

/// The 20-point grid on `[π/8, 3π/8]` used for density comparisons.
pub fn density_grid() -> Vec<f64> {
    (0..20).map(|k| PI / 8.0 + f64::from(k) * (PI / 4.0) / 19.0).collect()
}

fn measure_monotonicity() -> Result<CheckOutcome> {
    let grid = density_grid();
    let mut passed = true;
    let mut detail = Vec::new();
    let pairs = [
        (Exponent::Finite(1.0), Exponent::Finite(2.0)),
        (Exponent::Finite(2.0), Exponent::Finite(4.0)),
        (Exponent::Finite(4.0), Exponent::Infinity),
    ];
    for (q1, q2) in pairs {
        let report = measure_monotonicity_check(q1, q2, 64, &grid, 0.05)?;
        let min_margin = report.points.iter().map(|p| p.margin).fold(f64::INFINITY, f64::min);
        passed &= report.passed;
        detail.push(format!("({q1},{q2}) min margin {min_margin:.4}"));
    }
    // analytic pair: f_1 = 1 ≤ f_∞
    passed &= (0..=100).all(|k| density_pinf_psi(FRAC_PI_2 * f64::from(k) / 100.0) >= 1.0);
    Ok(outcome("measure_monotonicity", passed, detail.join("; ")))
}

fn proposition_two() -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for c in [0.5, 1.0, 3.0] {
        let grid = LogPolarGrid::new(40, 40, -1.0, c)?;
        worst = worst.max(equality_case_residual(c, &grid)?);
    }
    let s = sandwich_constants(&ExtremalEvaluator::ClosedFormPInfBall, E, &LogPolarGrid::default())?;
    let passed = worst <= 1e-12 && s.m > 0.0 && s.m <= s.big_m && s.big_m.is_finite();
    Ok(outcome(
        "proposition_two",
        passed,
        format!("equality residual {worst:.2e}; P_inf sandwich m = {:.6}, M = {:.6}", s.m, s.big_m),
    ))
}

fn form_reduction() -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for k in 0..50 {
        let psi = 0.05 + 1.45 * f64::from(k) / 49.0;
        let z = sphere_point(psi, 0.3 * f64::from(k), -0.7 * f64::from(k));
        let s = 1.0 - z[0].norm_sqr();
        let f = BoundaryForm3::new(2.0 / (z[1] * s * s), -2.0 / (z[1].conj() * s * s));
        let c = reduce_boundary_form(&f, &z)?;
        let expected = 4.0 / z[1].norm().powi(4);
        let value = c.real().unwrap_or(f64::NAN);
        worst = worst.max(rel(value, expected));
        // the same coefficient from evaluating both 3-forms on a tangent frame
        let frame = [
            [Complex64::i() * z[0], Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::i() * z[1]],
            [-z[1].conj(), z[0].conj()],
        ];
        let direct = f.to_form().evaluate(&frame) / surface_form(&z).evaluate(&frame);
        worst = worst.max((direct - Complex64::new(expected, 0.0)).norm() / expected);
    }
    Ok(outcome("form_reduction", worst <= 1e-12, format!("max rel err {worst:.2e} at 50 sphere points")))
}

fn form_finite_differences() -> Result<CheckOutcome> {
    let u = |x: f64, y: f64, z2: f64| (z2 * z2).ln() - (1.0 - x * x - y * y).ln();
    let h = 1e-4;
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let r = 0.05 + 0.85 * f64::from(k) / 19.0;
        let t = 0.4 * f64::from(k);
        let (x, y, z2) = (r * t.cos(), r * t.sin(), 0.3 + 0.1 * f64::from(k));
        let lap = (u(x + h, y, z2) + u(x - h, y, z2) + u(x, y + h, z2) + u(x, y - h, z2) - 4.0 * u(x, y, z2)) / (h * h);
        let coeff = ddc_u_coefficient(&[Complex64::new(x, y), Complex64::new(z2, 0.0)]);
        worst = worst.max(rel(coeff, 0.5 * lap));
    }
    Ok(outcome("form_finite_differences", worst <= 1e-5, format!("max rel err {worst:.2e} at 20 points, h = {h}")))
}

fn branch_densities() -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for k in 0..=50 {
        let psi = FRAC_PI_2 * f64::from(k) / 50.0;
        let z = sphere_point(psi, 1.1 * f64::from(k), 0.2 - 0.5 * f64::from(k));
        let branch = if psi >= FRAC_PI_4 { Branch::U } else { Branch::V };
        worst = worst.max(rel(wedge_density(&z, branch)?, density_pinf(&z)?));
    }
    Ok(outcome("branch_densities", worst <= 1e-12, format!("max rel gap to f_inf {worst:.2e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_checks_pass() {
        for check in [
            surface_mass,
            pinf_density_mass,
            total_mass_formula,
            lattice_counts,
            closed_form_values,
            seam_agreement,
            class_bounds,
            proposition_two,
            form_reduction,
            form_finite_differences,
            branch_densities,
        ] {
            let o = check().unwrap();
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }
}
