//! Monge-Ampère masses of monomial envelopes through their subgradient images.
//!
//! In log coordinates `x = (log|z_1|, log|z_2|)` an envelope is the convex
//! piecewise-affine function `F(x) = max_J (J·x − log‖z^J‖_K)/n`. Its real
//! Monge-Ampère measure is atomic: each vertex of the cell complex carries the
//! area of the convex hull of the slopes active there. The complex measure of
//! a torus-invariant set is `8π²` times the area of its subgradient image.
//!
//! A sector `{ψ_1 ≤ ψ < ψ_2}` of the sphere collects the slopes whose
//! direction is normal to `∂ log K` at a boundary parameter in the sector; the
//! normal direction of each monomial is known from its contact parameter.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extremal::MonomialEnvelope;
use crate::planar::{clip_half_plane, convex_hull, polygon_area, Pt};

/// Half-width of the log-coordinate box in which cells are built.
const CELL_BOX: f64 = 100.0;

/// A piece counts as active at a vertex within `ACTIVITY_TOL·(1 + |max|)` of the maximum.
pub const ACTIVITY_TOL: f64 = 1e-9;

/// Resolution and margin of the slope-space raster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RasterSpec {
    pub width: usize,
    pub height: usize,
    /// Relative dilation of the body's bounding box on every side.
    pub dilation: f64,
}

impl Default for RasterSpec {
    fn default() -> Self {
        Self { width: 2048, height: 2048, dilation: 0.05 }
    }
}

/// One atom of the real Monge-Ampère measure of the envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    /// Vertex of the cell complex in log coordinates.
    pub vertex: Pt,
    /// Convex hull of the active slopes, counter-clockwise.
    pub hull: Vec<Pt>,
}

impl Atom {
    pub fn area(&self) -> f64 {
        polygon_area(&self.hull)
    }
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    slope: Pt,
    intercept: f64,
    /// Direction of the slope in `[0, π/2]`; `None` for the zero slope.
    theta: Option<f64>,
}

impl Piece {
    #[inline]
    fn value(&self, x: Pt) -> f64 {
        self.slope[0] * x[0] + self.slope[1] * x[1] - self.intercept
    }
}

/// Rasterized subgradient image of a monomial envelope, with every covered
/// pixel tagged by the boundary parameter `ψ` it belongs to.
#[derive(Debug, Clone)]
pub struct ToricMeasure {
    atoms: Vec<Atom>,
    /// `ψ` of every covered pixel, sorted.
    pixel_psi: Vec<f64>,
    pixel_area: f64,
    raster: RasterSpec,
    window: [Pt; 2],
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Keeps the zero exponent and, on each ray through the origin, the largest
/// exponent; the others have cells with empty interior since `log‖z^J‖_K` is
/// 1-homogeneous in `J`.
fn relevant_pieces(env: &MonomialEnvelope) -> Vec<(Piece, f64)> {
    let n = f64::from(env.degree());
    let mut best: std::collections::BTreeMap<[u32; 2], (u32, usize)> = Default::default();
    let mut out = Vec::new();
    for (idx, t) in env.terms().iter().enumerate() {
        let [j1, j2] = t.exponent;
        if j1 == 0 && j2 == 0 {
            let piece = Piece { slope: [0.0, 0.0], intercept: t.log_norm / n, theta: None };
            out.push((piece, 0.0));
            continue;
        }
        let g = gcd(j1, j2);
        let key = [j1 / g, j2 / g];
        match best.get(&key) {
            Some(&(m, _)) if m >= g => {}
            _ => {
                best.insert(key, (g, idx));
            }
        }
    }
    for (_, (_, idx)) in best {
        let t = env.terms()[idx];
        let [j1, j2] = t.exponent;
        let slope = [f64::from(j1) / n, f64::from(j2) / n];
        let theta = f64::from(j2).atan2(f64::from(j1));
        out.push((Piece { slope, intercept: t.log_norm / n, theta: Some(theta) }, t.contact_psi));
    }
    out
}

/// Vertices of the cell of piece `k` inside the box.
fn cell(pieces: &[Piece], k: usize, order: &[usize]) -> Vec<Pt> {
    let b = CELL_BOX;
    let mut poly = vec![[-b, -b], [b, -b], [b, b], [-b, b]];
    let p = pieces[k];
    for &other in order {
        if other == k {
            continue;
        }
        let q = pieces[other];
        // p(x) ≥ q(x)  ⇔  (s_p − s_q)·x ≥ c_p − c_q
        let normal = [p.slope[0] - q.slope[0], p.slope[1] - q.slope[1]];
        poly = clip_half_plane(&poly, normal, p.intercept - q.intercept);
        if poly.len() < 3 {
            return Vec::new();
        }
    }
    poly
}

fn angular_order(pieces: &[Piece], k: usize) -> Vec<usize> {
    let key = |i: usize| match (pieces[k].theta, pieces[i].theta) {
        (_, None) => -1.0,
        (None, Some(_)) => 0.0,
        (Some(a), Some(b)) => (a - b).abs(),
    };
    let mut order: Vec<usize> = (0..pieces.len()).collect();
    order.sort_by(|&a, &b| key(a).total_cmp(&key(b)).then(a.cmp(&b)));
    order
}

fn on_box_boundary(x: Pt) -> bool {
    x[0].abs() >= CELL_BOX * (1.0 - 1e-12) || x[1].abs() >= CELL_BOX * (1.0 - 1e-12)
}

/// Linear interpolation of the contact parameter against slope direction.
struct ContactMap {
    theta: Vec<f64>,
    psi: Vec<f64>,
}

impl ContactMap {
    fn new(nodes: &[(Piece, f64)]) -> Self {
        let mut pts: Vec<(f64, f64)> = nodes.iter().filter_map(|(p, psi)| p.theta.map(|t| (t, *psi))).collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        pts.dedup_by(|a, b| a.0 == b.0);
        Self { theta: pts.iter().map(|p| p.0).collect(), psi: pts.iter().map(|p| p.1).collect() }
    }

    fn psi(&self, theta: f64) -> f64 {
        let n = self.theta.len();
        if n == 0 {
            return theta;
        }
        let i = self.theta.partition_point(|&t| t <= theta);
        if i == 0 {
            return self.psi[0];
        }
        if i == n {
            return self.psi[n - 1];
        }
        let (t0, t1) = (self.theta[i - 1], self.theta[i]);
        let w = (theta - t0) / (t1 - t0);
        self.psi[i - 1] + w * (self.psi[i] - self.psi[i - 1])
    }
}

impl ToricMeasure {
    pub fn new(env: &MonomialEnvelope, raster: RasterSpec) -> Result<Self> {
        if raster.width == 0 || raster.height == 0 || !(raster.dilation >= 0.0) {
            return Err(Error::InvalidParameter(format!("invalid raster {raster:?}")));
        }
        let nodes = relevant_pieces(env);
        let pieces: Vec<Piece> = nodes.iter().map(|(p, _)| *p).collect();
        let atoms = Self::build_atoms(&pieces);

        let extent = env.body().bounding_box();
        let (w, h) = (extent[0].max(f64::MIN_POSITIVE), extent[1].max(f64::MIN_POSITIVE));
        let window = [
            [-raster.dilation * w, -raster.dilation * h],
            [(1.0 + raster.dilation) * w, (1.0 + raster.dilation) * h],
        ];
        for atom in &atoms {
            for &v in &atom.hull {
                let inside = (0..2).all(|i| v[i] >= window[0][i] && v[i] <= window[1][i]);
                if !inside {
                    return Err(Error::RasterOverflow(v));
                }
            }
        }
        let contact = ContactMap::new(&nodes);
        let pixel_psi = rasterize(&atoms, raster, window, &contact);
        let dx = (window[1][0] - window[0][0]) / raster.width as f64;
        let dy = (window[1][1] - window[0][1]) / raster.height as f64;
        Ok(Self { atoms, pixel_psi, pixel_area: dx * dy, raster, window })
    }

    fn build_atoms(pieces: &[Piece]) -> Vec<Atom> {
        let vertices: Vec<Pt> = (0..pieces.len())
            .into_par_iter()
            .flat_map_iter(|k| {
                let order = angular_order(pieces, k);
                cell(pieces, k, &order).into_iter().filter(|&x| !on_box_boundary(x))
            })
            .collect();
        let mut seen = BTreeSet::new();
        let mut atoms = Vec::new();
        for x in vertices {
            let values: Vec<f64> = pieces.iter().map(|p| p.value(x)).collect();
            let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let tol = ACTIVITY_TOL * (1.0 + max.abs());
            let active: Vec<usize> = (0..pieces.len()).filter(|&i| values[i] >= max - tol).collect();
            if active.len() < 3 || !seen.insert(active.clone()) {
                continue;
            }
            let slopes: Vec<Pt> = active.iter().map(|&i| pieces[i].slope).collect();
            let hull = convex_hull(&slopes);
            if hull.len() >= 3 {
                atoms.push(Atom { vertex: x, hull });
            }
        }
        atoms
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Exact total area of the atoms (the hulls tile the convex hull of the slopes).
    pub fn atom_area_sum(&self) -> f64 {
        self.atoms.iter().map(Atom::area).sum()
    }

    pub fn raster(&self) -> RasterSpec {
        self.raster
    }

    pub fn pixel_area(&self) -> f64 {
        self.pixel_area
    }

    /// Window `[lower, upper]` of the raster in slope space.
    pub fn window(&self) -> [Pt; 2] {
        self.window
    }

    /// Mass bound from one layer of pixels along the window perimeter.
    pub fn raster_tolerance(&self) -> f64 {
        let dx = (self.window[1][0] - self.window[0][0]) / self.raster.width as f64;
        let dy = (self.window[1][1] - self.window[0][1]) / self.raster.height as f64;
        let perimeter = (self.window[1][0] - self.window[0][0]) + (self.window[1][1] - self.window[0][1]);
        8.0 * PI * PI * perimeter * dx.max(dy)
    }

    /// `8π²` times the covered area.
    pub fn total_mass(&self) -> f64 {
        8.0 * PI * PI * self.pixel_area * self.pixel_psi.len() as f64
    }

    /// Mass of the sector `ψ_1 ≤ ψ < ψ_2` (closed at `π/2`).
    pub fn sector_mass(&self, psi1: f64, psi2: f64) -> Result<f64> {
        check_sector(psi1, psi2)?;
        let lo = self.pixel_psi.partition_point(|&p| p < psi1);
        let hi = if psi2 >= FRAC_PI_2 {
            self.pixel_psi.len()
        } else {
            self.pixel_psi.partition_point(|&p| p < psi2)
        };
        Ok(8.0 * PI * PI * self.pixel_area * (hi - lo) as f64)
    }

    /// Midpoint density estimate `mass / σ` over `[ψ − h/2, ψ + h/2]`.
    pub fn density(&self, psi: f64, h: f64) -> Result<f64> {
        let (a, b) = (psi - 0.5 * h, psi + 0.5 * h);
        if !(h > 0.0 && a > 0.0 && b < FRAC_PI_2) {
            return Err(Error::InvalidSector(a, b));
        }
        Ok(self.sector_mass(a, b)? / super::sphere_quadrature(|_| 1.0, a, b)?)
    }
}

pub(crate) fn check_sector(psi1: f64, psi2: f64) -> Result<()> {
    if !(0.0..=FRAC_PI_2).contains(&psi1) || !(0.0..=FRAC_PI_2).contains(&psi2) || psi1 > psi2 {
        return Err(Error::InvalidSector(psi1, psi2));
    }
    Ok(())
}

/// Marks pixel centres inside any atom hull, row by row, and returns the
/// sorted contact parameters of the marked pixels.
fn rasterize(atoms: &[Atom], raster: RasterSpec, window: [Pt; 2], contact: &ContactMap) -> Vec<f64> {
    let dx = (window[1][0] - window[0][0]) / raster.width as f64;
    let dy = (window[1][1] - window[0][1]) / raster.height as f64;
    let eps = 1e-12 * (window[1][0] - window[0][0]).max(window[1][1] - window[0][1]);
    let ranges: Vec<(f64, f64)> = atoms
        .iter()
        .map(|a| {
            let lo = a.hull.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min);
            let hi = a.hull.iter().map(|p| p[1]).fold(f64::NEG_INFINITY, f64::max);
            (lo, hi)
        })
        .collect();
    let rows: Vec<Vec<f64>> = (0..raster.height)
        .into_par_iter()
        .map(|row| {
            let y = window[0][1] + (row as f64 + 0.5) * dy;
            let mut marked = vec![false; raster.width];
            for (atom, &(lo, hi)) in atoms.iter().zip(&ranges) {
                if y < lo - eps || y > hi + eps {
                    continue;
                }
                let Some((xl, xr)) = horizontal_chord(&atom.hull, y, eps) else { continue };
                let first = ((xl - eps - window[0][0]) / dx - 0.5).ceil().max(0.0) as usize;
                let last = ((xr + eps - window[0][0]) / dx - 0.5).floor();
                if last < 0.0 {
                    continue;
                }
                let last = (last as usize).min(raster.width - 1);
                for m in marked.iter_mut().take(last + 1).skip(first) {
                    *m = true;
                }
            }
            marked
                .iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(col, _)| {
                    let x = window[0][0] + (col as f64 + 0.5) * dx;
                    let theta = y.max(0.0).atan2(x.max(0.0));
                    contact.psi(theta)
                })
                .collect()
        })
        .collect();
    let mut psi: Vec<f64> = rows.into_iter().flatten().collect();
    psi.par_sort_unstable_by(f64::total_cmp);
    psi
}

/// `[x_left, x_right]` where the line at height `y` meets a convex polygon.
fn horizontal_chord(poly: &[Pt], y: f64, eps: f64) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let n = poly.len();
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let (ymin, ymax) = (p[1].min(q[1]), p[1].max(q[1]));
        if y < ymin - eps || y > ymax + eps {
            continue;
        }
        if (q[1] - p[1]).abs() <= eps {
            lo = lo.min(p[0].min(q[0]));
            hi = hi.max(p[0].max(q[0]));
        } else {
            let t = ((y - p[1]) / (q[1] - p[1])).clamp(0.0, 1.0);
            let x = p[0] + t * (q[0] - p[0]);
            lo = lo.min(x);
            hi = hi.max(x);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Mass of the sector `[ψ_1, ψ_2]` under the Monge-Ampère measure of the envelope.
pub fn gradient_image_sector_mass(env: &MonomialEnvelope, psi1: f64, psi2: f64, raster: RasterSpec) -> Result<f64> {
    check_sector(psi1, psi2)?;
    ToricMeasure::new(env, raster)?.sector_mass(psi1, psi2)
}
