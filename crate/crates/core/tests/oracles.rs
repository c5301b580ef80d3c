//! Library results against independent test-side computations, plus frozen
//! regression values.

use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_4, LN_2, PI};

use pextremal::extremal::{monomial_envelope, sandwich_constants, v_p1_ball, ExtremalEvaluator, LogPolarGrid};
use pextremal::monge_ampere::forms::surface_form;
use pextremal::monge_ampere::{
    density_pinf, numeric_density, toric_measure, wedge_density, BoundaryForm3, Branch, RasterSpec,
    DEFAULT_DENSITY_STEP,
};
use pextremal::reinhardt::monomial_norm_ball_closed;
use pextremal::{real_point, Complex64, ConvexBody, Exponent, ReinhardtCompact};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Regression constants for `(P_∞, B_2)` inside `{|z| < e}` on the default grid.
const SANDWICH_M: f64 = 1.000_061_997_052_020_2;
const SANDWICH_BIG_M: f64 = 1.999_876_004_895_740_9;
/// Density of `μ_{P_2,B_2}` at `ψ = π/4` from the degree-64 envelope at the default raster.
const Q2_DENSITY_AT_DIAGONAL: f64 = 1.977_757_629_176_710_1;

fn radial(q: Exponent, t: f64) -> f64 {
    let (c, s) = (t.cos(), t.sin());
    match q {
        Exponent::Infinity => 1.0 / c.max(s),
        Exponent::Finite(p) => 1.0 / (c.powf(p) + s.powf(p)).powf(1.0 / p),
    }
}

/// `½ ∫_{t0}^{t1} ρ(θ)^2 dθ` by composite Simpson.
fn polar_area(q: Exponent, t0: f64, t1: f64) -> f64 {
    let m = 20_000;
    let h = (t1 - t0) / f64::from(m);
    let mut acc = 0.0;
    for i in 0..=m {
        let w = if i == 0 || i == m { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        let r = radial(q, t0 + f64::from(i) * h);
        acc += w * r * r;
    }
    0.5 * acc * h / 3.0
}

/// `10^6` points spread over `P_q`: its boundary arc plus the origin.
fn boundary_samples(q: Exponent) -> Vec<[f64; 2]> {
    let m = 1_000_000;
    let mut pts: Vec<[f64; 2]> = (0..m)
        .map(|i| {
            let t = FRAC_PI_2 * f64::from(i) / f64::from(m - 1);
            let r = radial(q, t);
            [r * t.cos(), r * t.sin()]
        })
        .collect();
    pts.push([0.0, 0.0]);
    pts
}

#[test]
fn support_function_matches_sampled_sup() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [Exponent::Finite(1.0), Exponent::Finite(1.5), Exponent::Finite(2.0), Exponent::Finite(3.0), Exponent::Infinity] {
        let body = ConvexBody::planar(q);
        let samples = boundary_samples(q);
        for _ in 0..100 {
            let x = [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)];
            let sup = samples.iter().map(|y| x[0] * y[0] + x[1] * y[1]).fold(f64::NEG_INFINITY, f64::max);
            let phi = body.support_function(&x).unwrap();
            assert!((phi - sup).abs() <= 1e-3 * (1.0 + phi.abs()), "q={q} x={x:?}: {phi} vs {sup}");
        }
    }
    let p2 = ConvexBody::planar(Exponent::Finite(2.0));
    let sup = boundary_samples(Exponent::Finite(2.0)).iter().map(|y| 3.0 * y[0] + 4.0 * y[1]).fold(0.0, f64::max);
    assert!((sup - 5.0).abs() < 1e-9);
    assert!((p2.support_function(&[3.0, 4.0]).unwrap() - 5.0).abs() < 1e-14);
    let h = p2.log_indicator(&[Complex64::new(E, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
    assert!((h - 1.0).abs() < 1e-15);
}

#[test]
fn volumes_match_polar_quadrature() {
    for q in [Exponent::Finite(1.0), Exponent::Finite(1.5), Exponent::Finite(2.0), Exponent::Finite(3.0)] {
        let vol = ConvexBody::planar(q).volume().unwrap();
        let oracle = polar_area(q, 0.0, FRAC_PI_2);
        assert!((vol - oracle).abs() <= 1e-8 * oracle, "q={q}: {vol} vs {oracle}");
    }
    let q2 = ConvexBody::planar(Exponent::Finite(2.0)).volume().unwrap();
    assert!((q2 - FRAC_PI_4).abs() < 1e-14, "{q2}");
}

#[test]
fn lattice_points_of_quarter_disc() {
    let pts = ConvexBody::planar(Exponent::Finite(2.0)).lattice_points(2).unwrap();
    let mut brute: Vec<Vec<u32>> = Vec::new();
    for j1 in 0..=2u32 {
        for j2 in 0..=2u32 {
            if j1 * j1 + j2 * j2 <= 4 {
                brute.push(vec![j1, j2]);
            }
        }
    }
    let mut listed = pts.points.clone();
    listed.sort();
    brute.sort();
    assert_eq!(listed, brute);
    assert_eq!(listed.len(), 6);
}

#[test]
fn monomial_norms_match_grid_maxima() {
    let ball = ReinhardtCompact::unit_ball();
    for (j, expected) in [([1u32, 1u32], 0.5), ([2, 1], (4.0f64 / 27.0).sqrt()), ([3, 5], f64::NAN)] {
        let grid = (0..=400_000)
            .map(|i| {
                let t = FRAC_PI_2 * f64::from(i) / 400_000.0;
                t.cos().powi(j[0] as i32) * t.sin().powi(j[1] as i32)
            })
            .fold(0.0, f64::max);
        let norm = ball.monomial_norm(j);
        assert!((norm - grid).abs() < 1e-10, "{j:?}: {norm} vs {grid}");
        if expected.is_finite() {
            assert!((norm - expected).abs() < 1e-12);
        }
        assert!((monomial_norm_ball_closed(j) - norm).abs() < 1e-12);
    }
}

#[test]
fn p1_closed_form_matches_envelope() {
    let p1 = ConvexBody::planar(Exponent::Finite(1.0));
    let ball = ReinhardtCompact::unit_ball();
    for (z, exact) in [(real_point(2.0, 0.0), LN_2), (real_point(1.0, 1.0), 0.5 * LN_2)] {
        let env = monomial_envelope(&p1, &ball, 64, &z).unwrap();
        assert!((v_p1_ball(&z) - exact).abs() < 1e-15);
        assert!(env <= exact + 1e-12 && exact - env < 0.05, "{env} vs {exact}");
    }
}

#[test]
fn boundary_forms_agree_with_tangent_frame_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let psi = rng.gen_range(0.05..FRAC_PI_2 - 0.05);
        let z = [
            Complex64::from_polar(psi.cos(), rng.gen_range(0.0..2.0 * PI)),
            Complex64::from_polar(psi.sin(), rng.gen_range(0.0..2.0 * PI)),
        ];
        let a = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let b = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let f = BoundaryForm3::new(a, b);
        // three independent real tangent vectors at z
        let frame = [
            [Complex64::i() * z[0], Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::i() * z[1]],
            [-z[1].conj(), z[0].conj()],
        ];
        let direct = f.to_form().evaluate(&frame) / surface_form(&z).evaluate(&frame);
        let reduced = pextremal::monge_ampere::reduce_boundary_form(&f, &z).unwrap().as_complex();
        assert!((direct - reduced).norm() < 1e-12 * (1.0 + direct.norm()), "{direct} vs {reduced}");
    }
}

#[test]
fn branch_u_is_f_inf_on_its_half() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let psi = rng.gen_range(FRAC_PI_4..FRAC_PI_2);
        let z = [Complex64::from_polar(psi.cos(), rng.gen_range(0.0..6.0)), Complex64::from_polar(psi.sin(), rng.gen_range(0.0..6.0))];
        let u = wedge_density(&z, Branch::U).unwrap();
        assert!((u - density_pinf(&z).unwrap()).abs() <= 1e-12 * u);
    }
    let diag = real_point(std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2);
    assert!((wedge_density(&diag, Branch::U).unwrap() - 4.0).abs() < 1e-12);
    assert!((wedge_density(&real_point(1.0, 0.0), Branch::V).unwrap() - 1.0).abs() < 1e-14);
}

#[test]
fn numeric_densities_match_area_of_normal_cones() {
    // μ_{P_q,B_2} of a sector is 8π² times the area of P_q inside the cone of
    // outer normals, which at ψ point in direction θ = atan(tan²ψ)
    let measures = [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinity]
        .map(|q| (q, toric_measure(q, 64, RasterSpec::default()).unwrap()));
    for (q, m) in &measures {
        for psi in [0.5, FRAC_PI_4, 1.0, PI / 3.0] {
            let (a, b) = (psi - 0.5 * DEFAULT_DENSITY_STEP, psi + 0.5 * DEFAULT_DENSITY_STEP);
            let cone = polar_area(*q, a.tan().powi(2).atan(), b.tan().powi(2).atan());
            let sigma = 2.0 * PI * PI * ((2.0 * a).cos() - (2.0 * b).cos());
            let oracle = 8.0 * PI * PI * cone / sigma;
            let d = m.density(psi, DEFAULT_DENSITY_STEP).unwrap();
            assert!((d - oracle).abs() < 0.02 * oracle, "q={q} psi={psi}: {d} vs {oracle}");
        }
    }
}

#[test]
fn diagonal_densities() {
    let q2 = numeric_density(Exponent::Finite(2.0), 64, FRAC_PI_4, DEFAULT_DENSITY_STEP).unwrap();
    assert!((1.0..=4.0).contains(&q2));
    assert!((q2 - Q2_DENSITY_AT_DIAGONAL).abs() < 1e-9, "{q2}");
    let inf = numeric_density(Exponent::Infinity, 64, FRAC_PI_4, DEFAULT_DENSITY_STEP).unwrap();
    // the window average of f_∞ around the diagonal peak of 4
    assert!(inf > 3.7 && inf <= 4.0, "{inf}");
    let one = numeric_density(Exponent::Finite(1.0), 64, PI / 3.0, DEFAULT_DENSITY_STEP).unwrap();
    assert!((one - 1.0).abs() < 0.01, "{one}");
}

#[test]
fn sandwich_constants_are_frozen() {
    let s = sandwich_constants(&ExtremalEvaluator::ClosedFormPInfBall, E, &LogPolarGrid::default()).unwrap();
    assert_eq!(s.samples, 10_000);
    assert!((s.m - SANDWICH_M).abs() < 1e-12 && (s.big_m - SANDWICH_BIG_M).abs() < 1e-12, "{s:?}");
    assert!(0.0 < s.m && s.m <= s.big_m);
}
