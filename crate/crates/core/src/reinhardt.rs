//! Torus-invariant compacts `K ⊂ C^2` described by a radial boundary profile
//! `ψ ↦ (r1(ψ), r2(ψ))`, `ψ ∈ [0, π/2]`, and their monomial sup-norms.

use std::f64::consts::FRAC_PI_2;
use std::io::Read;

use crate::error::{Error, Result};

/// Width of the final golden-section bracket in `ψ`.
pub const GOLDEN_TOL: f64 = 1e-12;

/// Scan resolution used to certify unimodality of profile objectives.
const UNIMODAL_SCAN: usize = 4096;

/// Coarse scan bracketing the golden-section search.
const COARSE_SCAN: usize = 64;

const ANGLE_TOL: f64 = 1e-12;

/// One row of a sampled boundary profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample {
    pub psi: f64,
    pub r1: f64,
    pub r2: f64,
}

/// Boundary radii sampled along `ψ`, linearly interpolated between samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusProfile {
    samples: Vec<ProfileSample>,
}

impl TorusProfile {
    pub fn new(samples: Vec<ProfileSample>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidProfile(msg));
        if samples.len() < 2 {
            return bad("at least two samples are required".into());
        }
        let first = samples[0];
        let last = samples[samples.len() - 1];
        if first.psi.abs() > ANGLE_TOL || (last.psi - FRAC_PI_2).abs() > ANGLE_TOL {
            return bad(format!("psi must run from 0 to pi/2, got {} .. {}", first.psi, last.psi));
        }
        for s in &samples {
            if !(s.r1.is_finite() && s.r2.is_finite() && s.r1 >= 0.0 && s.r2 >= 0.0) {
                return bad(format!("radii must be finite and non-negative at psi = {}", s.psi));
            }
        }
        for w in samples.windows(2) {
            if w[1].psi <= w[0].psi {
                return bad(format!("psi not strictly increasing at {}", w[1].psi));
            }
            if w[1].r1 > w[0].r1 {
                return bad(format!("r1 increases at psi = {}", w[1].psi));
            }
            if w[1].r2 < w[0].r2 {
                return bad(format!("r2 decreases at psi = {}", w[1].psi));
            }
        }
        if !samples.iter().any(|s| s.r1 > 0.0 && s.r2 > 0.0) {
            return bad("profile lies in a coordinate axis".into());
        }
        let mut samples = samples;
        samples[0].psi = 0.0;
        let n = samples.len();
        samples[n - 1].psi = FRAC_PI_2;
        let profile = Self { samples };
        profile.check_unimodal()?;
        Ok(profile)
    }

    /// Reads `psi,r1,r2` rows; a non-numeric first row is treated as a header.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let mut samples = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::Input(e.to_string()))?;
            if record.len() != 3 {
                return Err(Error::Input(format!("row {}: expected psi,r1,r2", i + 1)));
            }
            let parsed: std::result::Result<Vec<f64>, _> =
                record.iter().map(str::parse::<f64>).collect();
            match parsed {
                Ok(v) => samples.push(ProfileSample { psi: v[0], r1: v[1], r2: v[2] }),
                Err(_) if i == 0 => continue,
                Err(e) => return Err(Error::Input(format!("row {}: {e}", i + 1))),
            }
        }
        Self::new(samples)
    }

    pub fn samples(&self) -> &[ProfileSample] {
        &self.samples
    }

    fn point(&self, psi: f64) -> (f64, f64) {
        let idx = self.samples.partition_point(|s| s.psi <= psi);
        if idx == 0 {
            let s = self.samples[0];
            return (s.r1, s.r2);
        }
        if idx >= self.samples.len() {
            let s = self.samples[self.samples.len() - 1];
            return (s.r1, s.r2);
        }
        let a = self.samples[idx - 1];
        let b = self.samples[idx];
        let t = (psi - a.psi) / (b.psi - a.psi);
        (a.r1 + t * (b.r1 - a.r1), a.r2 + t * (b.r2 - a.r2))
    }

    /// Rejects profiles whose log-objective has two strict local maxima for a
    /// representative exponent.
    fn check_unimodal(&self) -> Result<()> {
        const DIRECTIONS: [[u32; 2]; 9] =
            [[1, 1], [2, 1], [1, 2], [4, 1], [1, 4], [8, 1], [1, 8], [3, 2], [2, 3]];
        for j in DIRECTIONS {
            let values: Vec<f64> = (0..=UNIMODAL_SCAN)
                .map(|i| {
                    let (r1, r2) = self.point(FRAC_PI_2 * i as f64 / UNIMODAL_SCAN as f64);
                    objective(j, r1, r2)
                })
                .collect();
            let peaks = count_strict_peaks(&values);
            if peaks > 1 {
                return Err(Error::InvalidProfile(format!(
                    "objective for J = {j:?} has {peaks} strict local maxima"
                )));
            }
        }
        Ok(())
    }
}

fn count_strict_peaks(values: &[f64]) -> usize {
    let same = |a: f64, b: f64| {
        a == b || (a.is_finite() && b.is_finite() && (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs())))
    };
    let mut runs: Vec<f64> = Vec::with_capacity(values.len());
    for &v in values {
        match runs.last() {
            Some(&last) if same(last, v) => {}
            _ => runs.push(v),
        }
    }
    (0..runs.len())
        .filter(|&i| {
            (i == 0 || runs[i] > runs[i - 1]) && (i + 1 == runs.len() || runs[i] > runs[i + 1])
        })
        .count()
}

#[inline]
fn objective(j: [u32; 2], r1: f64, r2: f64) -> f64 {
    let term = |e: u32, r: f64| if e == 0 { 0.0 } else { f64::from(e) * r.ln() };
    term(j[0], r1) + term(j[1], r2)
}

/// The sup-norm `‖z^J‖_K` in log form, with the boundary parameter attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonomialSup {
    pub log_norm: f64,
    pub psi: f64,
}

impl MonomialSup {
    pub fn norm(&self) -> f64 {
        self.log_norm.exp()
    }
}

/// A torus-invariant compact in `C^2`.
#[derive(Debug, Clone, PartialEq)]
pub enum ReinhardtCompact {
    /// `{|z_1|^2 + |z_2|^2 ≤ radius^2}`.
    EuclideanBall { radius: f64 },
    TorusProfile(TorusProfile),
}

impl ReinhardtCompact {
    /// The closed unit ball `B_2`.
    pub fn unit_ball() -> Self {
        ReinhardtCompact::EuclideanBall { radius: 1.0 }
    }

    pub fn ball(radius: f64) -> Result<Self> {
        if radius.is_finite() && radius > 0.0 {
            Ok(ReinhardtCompact::EuclideanBall { radius })
        } else {
            Err(Error::InvalidParameter(format!("ball radius must be positive, got {radius}")))
        }
    }

    pub fn profile(samples: Vec<ProfileSample>) -> Result<Self> {
        TorusProfile::new(samples).map(ReinhardtCompact::TorusProfile)
    }

    /// Boundary radii `(r1, r2)` at parameter `psi`.
    pub fn boundary_point(&self, psi: f64) -> Result<(f64, f64)> {
        if !(-ANGLE_TOL..=FRAC_PI_2 + ANGLE_TOL).contains(&psi) {
            return Err(Error::AngleOutOfRange(psi));
        }
        Ok(self.boundary_unchecked(psi.clamp(0.0, FRAC_PI_2)))
    }

    fn boundary_unchecked(&self, psi: f64) -> (f64, f64) {
        match self {
            ReinhardtCompact::EuclideanBall { radius } => (radius * psi.cos(), radius * psi.sin()),
            ReinhardtCompact::TorusProfile(p) => p.point(psi),
        }
    }

    /// `‖z^J‖_K = max_ψ r1(ψ)^{j1} r2(ψ)^{j2}`.
    pub fn monomial_norm(&self, j: [u32; 2]) -> f64 {
        self.monomial_sup(j).norm()
    }

    /// Maximizes `j1 log r1(ψ) + j2 log r2(ψ)` over the boundary: a coarse scan
    /// brackets the maximum, golden-section search refines it.
    pub fn monomial_sup(&self, j: [u32; 2]) -> MonomialSup {
        match j {
            [0, 0] => MonomialSup { log_norm: 0.0, psi: 0.0 },
            [_, 0] => {
                // r1 is non-increasing, so the maximum sits at ψ = 0
                let (r1, _) = self.boundary_unchecked(0.0);
                MonomialSup { log_norm: objective(j, r1, 1.0), psi: 0.0 }
            }
            [0, _] => {
                let (_, r2) = self.boundary_unchecked(FRAC_PI_2);
                MonomialSup { log_norm: objective(j, 1.0, r2), psi: FRAC_PI_2 }
            }
            _ => self.golden_section(j),
        }
    }

    fn golden_section(&self, j: [u32; 2]) -> MonomialSup {
        let f = |psi: f64| {
            let (r1, r2) = self.boundary_unchecked(psi);
            objective(j, r1, r2)
        };
        let step = FRAC_PI_2 / COARSE_SCAN as f64;
        let (best_i, best_v) = (0..=COARSE_SCAN)
            .map(|i| (i, f(i as f64 * step)))
            .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
        let mut a = best_i.saturating_sub(1) as f64 * step;
        let mut b = ((best_i + 1).min(COARSE_SCAN)) as f64 * step;
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let (mut fc, mut fd) = (f(c), f(d));
        while b - a > GOLDEN_TOL {
            if fc >= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = f(d);
            }
        }
        let psi = 0.5 * (a + b);
        let v = f(psi);
        if v >= best_v {
            MonomialSup { log_norm: v, psi }
        } else {
            MonomialSup { log_norm: best_v, psi: best_i as f64 * step }
        }
    }

    /// Like [`Self::monomial_sup`], but uses the closed form for balls.
    pub fn monomial_sup_fast(&self, j: [u32; 2]) -> MonomialSup {
        match self {
            ReinhardtCompact::EuclideanBall { radius } => {
                let total = f64::from(j[0]) + f64::from(j[1]);
                let psi = if j == [0, 0] {
                    0.0
                } else {
                    (f64::from(j[1]) / total).sqrt().asin()
                };
                MonomialSup { log_norm: log_monomial_norm_ball(j) + total * radius.ln(), psi }
            }
            ReinhardtCompact::TorusProfile(_) => self.monomial_sup(j),
        }
    }
}

/// `log ‖z^J‖_{B_2} = ½ (j1 log j1 + j2 log j2 − (j1+j2) log(j1+j2))`, with `0 log 0 = 0`.
pub fn log_monomial_norm_ball(j: [u32; 2]) -> f64 {
    let xlogx = |v: f64| if v == 0.0 { 0.0 } else { v * v.ln() };
    let (a, b) = (f64::from(j[0]), f64::from(j[1]));
    0.5 * (xlogx(a) + xlogx(b) - xlogx(a + b))
}

/// Closed form `‖z^J‖_{B_2} = sqrt(j1^{j1} j2^{j2} / (j1+j2)^{j1+j2})`.
pub fn monomial_norm_ball_closed(j: [u32; 2]) -> f64 {
    log_monomial_norm_ball(j).exp()
}
