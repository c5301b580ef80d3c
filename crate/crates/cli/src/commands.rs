use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use pextremal::extremal::{convergence_errors, LogPolarGrid};
use pextremal::monge_ampere::{
    density_pinf_psi, sector_mass_report, sphere_quadrature, total_mass, RasterSpec,
};
use pextremal::{real_point, verify, ConvexBody, Exponent, ExtremalEvaluator, MonomialEnvelope, ToricMeasure};
use serde_json::Value;

use crate::output::{fmt_num, num, object, opt_num, render_json, Format, Table};
use crate::{CliError, ConvergeArgs, DensityArgs, EvalArgs, MassArgs, MeasureArgs, Outcome, VerifyArgs};

fn emit(format: Format, table: Table, json: Value, passed: bool) -> Outcome {
    let artifact = match format {
        Format::Csv => table.render(),
        Format::Json => render_json(&json),
    };
    Outcome { artifact, passed }
}

/// `q` as a JSON value: a number, `"inf"`, or `null` for polytopes.
fn q_value(body: &ConvexBody) -> Value {
    match body {
        ConvexBody::Lq { q: Exponent::Finite(q), .. } => num(*q),
        ConvexBody::Lq { q: Exponent::Infinity, .. } => "inf".into(),
        ConvexBody::Polytope(_) => Value::Null,
    }
}

fn body_label(body: &ConvexBody) -> String {
    match body {
        ConvexBody::Lq { q, dim } => format!("lq q={q} d={dim}"),
        ConvexBody::Polytope(_) => "polytope".into(),
    }
}

pub fn eval(args: &EvalArgs) -> Result<Outcome, CliError> {
    let body = args.body.resolve()?;
    let set = args.set.resolve()?;
    let evaluator = ExtremalEvaluator::select(&body, &set, args.n, args.envelope)?;
    let method = match &evaluator {
        ExtremalEvaluator::MonomialEnvelope(_) => format!("envelope n={}", args.n),
        _ => "closed form".into(),
    };
    let format = args.output.format.unwrap_or(Format::Csv);
    if let Some((r1, r2)) = args.point {
        let v = evaluator.evaluate(&real_point(r1, r2));
        let mut t = Table::new(&["r1", "r2", "value"]);
        t.row(vec![fmt_num(r1), fmt_num(r2), fmt_num(v)]);
        let json = object([
            ("body", body_label(&body).into()),
            ("method", method.into()),
            ("r1", num(r1)),
            ("r2", num(r2)),
            ("value", num(v)),
        ]);
        return Ok(emit(format, t, json, true));
    }
    let (lo, hi) = args.rho_range;
    let grid = LogPolarGrid::new(args.psi_grid, args.rho_grid, lo, hi)?;
    let mut t = Table::new(&["psi", "rho", "value"]);
    let mut rows = Vec::with_capacity(grid.len());
    for p in grid.points() {
        let v = evaluator.evaluate(&p.z);
        t.row(vec![fmt_num(p.psi), fmt_num(p.rho), fmt_num(v)]);
        rows.push(object([("psi", num(p.psi)), ("rho", num(p.rho)), ("value", num(v))]));
    }
    let json = object([("body", body_label(&body).into()), ("method", method.into()), ("points", Value::Array(rows))]);
    Ok(emit(format, t, json, true))
}

fn build_measure(args: &MeasureArgs) -> Result<(ConvexBody, ToricMeasure), CliError> {
    let body = args.body.resolve()?;
    let set = args.set.resolve()?;
    if args.raster < 16 {
        return Err(CliError::Config("--raster must be at least 16".into()));
    }
    let started = Instant::now();
    let env = MonomialEnvelope::new(body.clone(), set, args.n)?;
    let raster = RasterSpec { width: args.raster, height: args.raster, ..RasterSpec::default() };
    let measure = ToricMeasure::new(&env, raster)?;
    log::info!("toric measure: {} atoms in {:.2?}", measure.atoms().len(), started.elapsed());
    Ok((body, measure))
}

/// `2!·4π²·Vol(P)`.
fn expected_total(body: &ConvexBody) -> Result<f64, CliError> {
    Ok(match body {
        ConvexBody::Lq { q, dim: 2 } => total_mass(*q)?,
        _ => 8.0 * PI * PI * body.volume()?,
    })
}

pub fn mass(args: &MassArgs) -> Result<Outcome, CliError> {
    let (body, measure) = build_measure(&args.measure)?;
    let report = sector_mass_report(&measure, args.sectors)?;
    let expected = expected_total(&body)?;
    let rel = (report.total - expected).abs() / expected;
    let passed = rel <= args.tol;
    let mut t = Table::new(&["psi_lo", "psi_hi", "mass", "density"]);
    let mut sectors = Vec::new();
    let mut densities = Vec::new();
    for (&(a, b, m), &(psi, d)) in report.sectors.iter().zip(&report.density_samples) {
        t.row(vec![fmt_num(a), fmt_num(b), fmt_num(m), fmt_num(d)]);
        sectors.push(Value::Array(vec![num(a), num(b), num(m)]));
        densities.push(Value::Array(vec![num(psi), num(d)]));
    }
    t.note("total", fmt_num(report.total));
    t.note("expected_total", fmt_num(expected));
    t.note("relative_error", fmt_num(rel));
    t.note("passed", passed.to_string());
    let json = object([
        ("q", q_value(&body)),
        ("body", body_label(&body).into()),
        ("n", args.measure.n.into()),
        ("sectors", Value::Array(sectors)),
        ("densities", Value::Array(densities)),
        ("total", num(report.total)),
        ("expected_total", num(expected)),
        ("relative_error", num(rel)),
        ("tolerance", num(args.tol)),
        ("passed", passed.into()),
    ]);
    Ok(emit(args.output.format.unwrap_or(Format::Json), t, json, passed))
}

/// Window average of the exact density where one is known.
fn reference_density(body: &ConvexBody, a: f64, b: f64) -> Result<Option<f64>, CliError> {
    Ok(match body {
        ConvexBody::Lq { q: Exponent::Finite(q), dim: 2 } if *q == 1.0 => Some(1.0),
        ConvexBody::Lq { q: Exponent::Infinity, dim: 2 } => {
            Some(sphere_quadrature(density_pinf_psi, a, b)? / sphere_quadrature(|_| 1.0, a, b)?)
        }
        _ => None,
    })
}

pub fn density(args: &DensityArgs) -> Result<Outcome, CliError> {
    let psis = match args.psi_grid {
        None => verify::density_grid(),
        Some(0) => return Err(CliError::Config("--psi-grid must be positive".into())),
        Some(k) => (0..k).map(|i| FRAC_PI_2 * (i as f64 + 0.5) / k as f64).collect(),
    };
    let (body, measure) = build_measure(&args.measure)?;
    let h = args.step;
    let mut passed = true;
    let mut t = Table::new(&["psi", "f_q"]);
    let mut rows = Vec::new();
    for psi in psis {
        let d = measure.density(psi, h)?;
        let reference = reference_density(&body, psi - 0.5 * h, psi + 0.5 * h)?;
        if let (Some(tol), Some(r)) = (args.tol, reference) {
            passed &= (d - r).abs() <= tol;
        }
        t.row(vec![fmt_num(psi), fmt_num(d)]);
        rows.push(object([("psi", num(psi)), ("f_q", num(d)), ("reference", opt_num(reference))]));
    }
    let json = object([
        ("q", q_value(&body)),
        ("body", body_label(&body).into()),
        ("n", args.measure.n.into()),
        ("step", num(h)),
        ("samples", Value::Array(rows)),
        ("passed", passed.into()),
    ]);
    Ok(emit(args.output.format.unwrap_or(Format::Csv), t, json, passed))
}

pub fn converge(args: &ConvergeArgs) -> Result<Outcome, CliError> {
    let body = args.body.resolve()?;
    let set = pextremal::ReinhardtCompact::unit_ball();
    let reference = ExtremalEvaluator::select(&body, &set, 1, false)?;
    if matches!(reference, ExtremalEvaluator::MonomialEnvelope(_)) {
        return Err(CliError::Config("converge needs a body with a closed form: --q 1 or --q inf".into()));
    }
    if args.n.is_empty() || args.n.contains(&0) {
        return Err(CliError::Config("--n needs positive degrees".into()));
    }
    let errors = convergence_errors(&body, &set, &reference, &args.n, &LogPolarGrid::exterior_test_set())?;
    let monotone = errors.windows(2).all(|w| w[1].1 <= w[0].1);
    let last = errors.last().map_or(f64::NAN, |e| e.1);
    let passed = monotone && last <= args.tol;
    let mut t = Table::new(&["n", "max_error"]);
    let mut rows = Vec::new();
    for &(n, e) in &errors {
        t.row(vec![n.to_string(), fmt_num(e)]);
        rows.push(object([("n", n.into()), ("max_error", num(e))]));
    }
    t.note("non_increasing", monotone.to_string());
    t.note("passed", passed.to_string());
    let json = object([
        ("body", body_label(&body).into()),
        ("errors", Value::Array(rows)),
        ("non_increasing", monotone.into()),
        ("tolerance", num(args.tol)),
        ("passed", passed.into()),
    ]);
    Ok(emit(args.output.format.unwrap_or(Format::Csv), t, json, passed))
}

pub fn verify(args: &VerifyArgs) -> Outcome {
    let outcomes = verify::run_all();
    let passed = outcomes.iter().all(|o| o.passed);
    let mut t = Table::new(&["check", "passed", "detail"]);
    let mut checks = Vec::new();
    for o in &outcomes {
        t.row(vec![o.name.into(), o.passed.to_string(), format!("\"{}\"", o.detail.replace('"', "\"\""))]);
        checks.push(object([("check", o.name.into()), ("passed", o.passed.into()), ("detail", o.detail.clone().into())]));
    }
    let failures: Vec<Value> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name.into()).collect();
    let json = object([("passed", passed.into()), ("checks", Value::Array(checks)), ("failures", Value::Array(failures))]);
    emit(args.output.format.unwrap_or(Format::Csv), t, json, passed)
}
