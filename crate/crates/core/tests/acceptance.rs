//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p pextremal --test acceptance`.

use std::f64::consts::{E, FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, LN_2, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use pextremal::extremal::{
    equality_case_residual, pinf_branches_sq, sandwich_constants, v_p1_ball, v_pinf_ball, ExtremalEvaluator,
    LogPolarGrid, MonomialEnvelope,
};
use pextremal::monge_ampere::forms::ddc_u_coefficient;
use pextremal::monge_ampere::{
    density_pinf_psi, measure_monotonicity_check, reduce_boundary_form, sector_mass_pinf, sector_mass_report,
    sphere_quadrature, toric_measure, total_mass, BoundaryForm3, RasterSpec,
};
use pextremal::{real_point, Complex64, ConvexBody, Exponent, ReinhardtCompact};

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: String) -> Verdict {
    Verdict { passed, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Area of `P_q` as `½ ∫ ρ(θ)^2 dθ`, `ρ(θ) = 1/‖(cos θ, sin θ)‖_q`, by composite
/// Simpson with `π/4` on a node.
fn polar_area(q: Exponent) -> f64 {
    let rho = |t: f64| {
        let (c, s) = (t.cos(), t.sin());
        match q {
            Exponent::Infinity => 1.0 / c.max(s),
            Exponent::Finite(p) => 1.0 / (c.powf(p) + s.powf(p)).powf(1.0 / p),
        }
    };
    let m = 400_000;
    let h = FRAC_PI_2 / f64::from(m);
    let mut acc = 0.0;
    for i in 0..=m {
        let w = if i == 0 || i == m { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        let r = rho(f64::from(i) * h);
        acc += w * r * r;
    }
    0.5 * acc * h / 3.0
}

fn c1_surface_mass() -> Verdict {
    let start = Instant::now();
    let s = sphere_quadrature(|_| 1.0, 0.0, FRAC_PI_2).unwrap();
    let t = start.elapsed();
    let err = rel(s, 4.0 * PI * PI);
    verdict(err <= 1e-9 && t < Duration::from_secs(1), format!("rel err {err:.2e}, {t:.2?}"))
}

fn c2_density_mass() -> Verdict {
    let full = sphere_quadrature(density_pinf_psi, 0.0, FRAC_PI_2).unwrap();
    let closed = sector_mass_pinf(FRAC_PI_4).unwrap();
    let quad = sphere_quadrature(density_pinf_psi, 0.0, FRAC_PI_4).unwrap();
    let e1 = rel(full, 8.0 * PI * PI);
    let e2 = rel(closed, quad).max(rel(closed, 4.0 * PI * PI));
    verdict(e1 <= 1e-9 && e2 <= 1e-9, format!("8pi^2 rel err {e1:.2e}; sector closed vs quadrature {e2:.2e}"))
}

fn c3_total_mass() -> Verdict {
    let mut worst: f64 = 0.0;
    for q in [Exponent::Finite(1.0), Exponent::Finite(1.5), Exponent::Finite(2.0), Exponent::Finite(3.0), Exponent::Infinity] {
        let vol = ConvexBody::planar(q).volume().unwrap();
        worst = worst.max(rel(vol, polar_area(q)));
        worst = worst.max(rel(total_mass(q).unwrap(), 8.0 * PI * PI * vol));
    }
    let named = rel(ConvexBody::planar(Exponent::Finite(1.0)).volume().unwrap(), 0.5)
        .max(rel(ConvexBody::planar(Exponent::Finite(2.0)).volume().unwrap(), FRAC_PI_4))
        .max(rel(ConvexBody::planar(Exponent::Infinity).volume().unwrap(), 1.0));
    verdict(worst <= 1e-8 && named <= 1e-14, format!("Gamma vs polar quadrature max rel {worst:.2e}; named volumes {named:.2e}"))
}

fn c4_closed_form() -> Verdict {
    let mut worst: f64 = 0.0;
    for k in 0..1000 {
        let t = FRAC_1_SQRT_2 + 30.0 * f64::from(k / 2) / 500.0;
        // seams |z_1| = 1/√2 and |z_2| = 1/√2, hit exactly in squared moduli
        let (a, b) = if k % 2 == 0 { (0.5, t * t) } else { (t * t, 0.5) };
        let values: Vec<f64> = pinf_branches_sq(a, b).into_iter().map(|(_, v)| v).collect();
        let expected = t.ln() + 0.5 * LN_2;
        for v in &values {
            worst = worst.max((v - expected).abs());
        }
        let z = if k % 2 == 0 { real_point(FRAC_1_SQRT_2, t) } else { real_point(t, FRAC_1_SQRT_2) };
        worst = worst.max((v_pinf_ball(&z) - expected).abs());
    }
    let at_corner = v_pinf_ball(&real_point(1.0, 1.0)) - LN_2;
    let on_axis = v_pinf_ball(&real_point(0.0, 2f64.sqrt())) - 0.5 * LN_2;
    let exact = at_corner.abs() <= 2.0 * f64::EPSILON && on_axis.abs() <= 2.0 * f64::EPSILON;
    verdict(
        worst <= 1e-12 && exact,
        format!("seam residual {worst:.2e} on 1000 points; V(1,1) - log2 = {at_corner:.1e}, V(0,sqrt2) - log2/2 = {on_axis:.1e}"),
    )
}

fn c5_convergence() -> Verdict {
    let start = Instant::now();
    // ψ at 10 cell midpoints of (0, π/2), ρ = 0.1, 0.3, …, 1.9
    let points: Vec<_> = (0..10)
        .flat_map(|i| {
            let psi = FRAC_PI_2 * (f64::from(i) + 0.5) / 10.0;
            (0..10).map(move |k| {
                let r = (0.1 + 0.2 * f64::from(k)).exp();
                real_point(r * psi.cos(), r * psi.sin())
            })
        })
        .collect();
    let ball = ReinhardtCompact::unit_ball();
    let mut passed = true;
    let mut detail = Vec::new();
    for (label, q, exact) in [
        ("P_inf", Exponent::Infinity, v_pinf_ball as fn(&_) -> f64),
        ("P_1", Exponent::Finite(1.0), v_p1_ball as fn(&_) -> f64),
    ] {
        let errs: Vec<f64> = [4, 8, 16, 32, 64]
            .iter()
            .map(|&n| {
                let env = MonomialEnvelope::new(ConvexBody::planar(q), ball.clone(), n).unwrap();
                points.iter().map(|z| (env.evaluate(z) - exact(z)).abs()).fold(0.0, f64::max)
            })
            .collect();
        passed &= errs.windows(2).all(|w| w[1] <= w[0]) && errs[4] <= 0.05;
        detail.push(format!("{label} {:?}", errs.iter().map(|e| format!("{e:.4}")).collect::<Vec<_>>()));
    }
    let t = start.elapsed();
    passed &= t < Duration::from_secs(30);
    verdict(passed, format!("{}; {t:.2?}", detail.join("; ")))
}

fn c6_toric_mass() -> Verdict {
    let start = Instant::now();
    let mut passed = true;
    let mut detail = Vec::new();
    for q in [Exponent::Infinity, Exponent::Finite(1.0), Exponent::Finite(2.0)] {
        let m = toric_measure(q, 64, RasterSpec::default()).unwrap();
        if q == Exponent::Infinity {
            let quarter = m.sector_mass(0.0, FRAC_PI_4).unwrap();
            let e = rel(quarter, 4.0 * PI * PI * FRAC_PI_4.tan().powi(2));
            passed &= e <= 1e-2;
            detail.push(format!("[0,pi/4] rel {e:.2e}"));
        }
        let report = sector_mass_report(&m, 32).unwrap();
        let e = rel(report.total, total_mass(q).unwrap());
        let positive = report.sectors.iter().all(|s| s.2 > 0.0);
        passed &= e <= 1e-2 && positive;
        detail.push(format!("q={q} 32-sector rel {e:.2e}{}", if positive { "" } else { " (empty sector)" }));
    }
    let t = start.elapsed();
    passed &= t < Duration::from_secs(120);
    verdict(passed, format!("{}; {t:.2?}", detail.join("; ")))
}

fn c7_monotonicity() -> Verdict {
    let grid: Vec<f64> = (0..20).map(|k| PI / 8.0 + f64::from(k) * (PI / 4.0) / 19.0).collect();
    let mut passed = true;
    let mut detail = Vec::new();
    for (q1, q2) in [
        (Exponent::Finite(1.0), Exponent::Finite(2.0)),
        (Exponent::Finite(2.0), Exponent::Finite(4.0)),
        (Exponent::Finite(4.0), Exponent::Infinity),
    ] {
        let report = measure_monotonicity_check(q1, q2, 64, &grid, 0.05).unwrap();
        let worst = report.points.iter().map(|p| p.margin).fold(f64::INFINITY, f64::min);
        passed &= report.passed;
        detail.push(format!("({q1},{q2}) min margin {worst:.3}"));
    }
    let analytic = (0..=1000).all(|k| {
        let psi = FRAC_PI_2 * f64::from(k) / 1000.0;
        1.0 <= 1.0 / psi.cos().max(psi.sin()).powi(4)
    });
    passed &= analytic;
    verdict(passed, format!("{}; analytic (1,inf) {analytic}", detail.join("; ")))
}

fn c8_proposition_two() -> Verdict {
    let mut worst: f64 = 0.0;
    for c in [0.5, 1.0, 3.0] {
        let grid = LogPolarGrid::new(50, 50, -1.0, c).unwrap();
        worst = worst.max(equality_case_residual(c, &grid).unwrap());
    }
    let grid = LogPolarGrid::default();
    let s = sandwich_constants(&ExtremalEvaluator::ClosedFormPInfBall, E, &grid).unwrap();
    let ok = worst <= 1e-12 && s.m > 0.0 && s.m <= s.big_m && s.big_m.is_finite() && s.samples == 10_000;
    verdict(ok, format!("equality residual {worst:.2e}; m = {:.6}, M = {:.6} on {} points", s.m, s.big_m, s.samples))
}

fn c9_form_calculus() -> Verdict {
    let mut worst: f64 = 0.0;
    for k in 0..50 {
        let psi = 0.02 + (FRAC_PI_2 - 0.04) * f64::from(k) / 49.0;
        let z = [Complex64::from_polar(psi.cos(), 0.37 * f64::from(k)), Complex64::from_polar(psi.sin(), 1.0 - 0.11 * f64::from(k))];
        let s = 1.0 - z[0].norm_sqr();
        let f = BoundaryForm3::new(2.0 / (z[1] * s * s), -2.0 / (z[1].conj() * s * s));
        let c = reduce_boundary_form(&f, &z).unwrap().real().expect("real coefficient");
        worst = worst.max(rel(c, 4.0 / z[1].norm().powi(4)));
    }
    let u = |x: f64, y: f64, w: f64| (w * w).ln() - (1.0 - x * x - y * y).ln();
    let h = 1e-4;
    let mut fd: f64 = 0.0;
    for k in 0..20 {
        let (r, t, w) = (0.04 * f64::from(k + 1), 0.9 * f64::from(k), 0.2 + 0.05 * f64::from(k));
        let (x, y) = (r * t.cos(), r * t.sin());
        let lap = (u(x + h, y, w) + u(x - h, y, w) + u(x, y + h, w) + u(x, y - h, w) - 4.0 * u(x, y, w)) / (h * h);
        fd = fd.max(rel(ddc_u_coefficient(&[Complex64::new(x, y), Complex64::new(w, 0.0)]), 0.5 * lap));
    }
    verdict(worst <= 1e-12 && fd <= 1e-5, format!("reduction rel err {worst:.2e} at 50 points; dd^c u vs Laplacian/2 {fd:.2e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("surface mass 4pi^2", c1_surface_mass),
        ("density mass 8pi^2 and sector 4pi^2", c2_density_mass),
        ("total-mass formula and volumes", c3_total_mass),
        ("closed form seams and values", c4_closed_form),
        ("envelope convergence", c5_convergence),
        ("toric mass oracle", c6_toric_mass),
        ("measure monotonicity", c7_monotonicity),
        ("relative extremal sandwich and equality case", c8_proposition_two),
        ("form calculus", c9_form_calculus),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let status = if v.passed { "PASS" } else { "FAIL" };
        println!("{status} [{}] {name}: {} ({:.2?})", i + 1, v.detail, start.elapsed());
        failed += usize::from(!v.passed);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
