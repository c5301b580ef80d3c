use rayon::prelude::*;

use crate::convex_body::ConvexBody;
use crate::error::{Error, Result};
use crate::reinhardt::ReinhardtCompact;
use crate::{moduli, Point};

/// One normalized monomial `z^J / ‖z^J‖_K` of the envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeTerm {
    pub exponent: [u32; 2],
    /// `log ‖z^J‖_K`.
    pub log_norm: f64,
    /// Boundary parameter `ψ` where `|z^J|` attains its sup on `K`.
    pub contact_psi: f64,
}

impl EnvelopeTerm {
    /// `J · x − log ‖z^J‖_K` at log-moduli `x`; a zero exponent ignores its coordinate.
    #[inline]
    pub fn log_value(&self, x: [f64; 2]) -> f64 {
        let part = |j: u32, xi: f64| if j == 0 { 0.0 } else { f64::from(j) * xi };
        part(self.exponent[0], x[0]) + part(self.exponent[1], x[1]) - self.log_norm
    }
}

/// `max_{J ∈ nP} (1/n) log(|z^J| / ‖z^J‖_K)`, a lower approximation of
/// `V_{P,K}` that increases along `n, 2n, 4n, …`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialEnvelope {
    body: ConvexBody,
    set: ReinhardtCompact,
    n: u32,
    terms: Vec<EnvelopeTerm>,
    excluded: Vec<[u32; 2]>,
}

impl MonomialEnvelope {
    /// Tabulates `log ‖z^J‖_K` for every `J ∈ nP ∩ Z^2`. Monomials vanishing
    /// identically on `K` are dropped with a warning.
    pub fn new(body: ConvexBody, set: ReinhardtCompact, n: u32) -> Result<Self> {
        if body.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: body.dim() });
        }
        let lattice = body.lattice_points(n)?;
        let sups: Vec<_> = lattice
            .points
            .par_iter()
            .map(|p| {
                let j = [p[0], p[1]];
                (j, set.monomial_sup_fast(j))
            })
            .collect();
        let mut terms = Vec::with_capacity(sups.len());
        let mut excluded = Vec::new();
        for (j, sup) in sups {
            if sup.log_norm.is_finite() {
                terms.push(EnvelopeTerm { exponent: j, log_norm: sup.log_norm, contact_psi: sup.psi });
            } else {
                excluded.push(j);
            }
        }
        if !excluded.is_empty() {
            log::warn!("{} monomials vanish on K and were dropped: {:?}", excluded.len(), excluded);
        }
        Ok(Self { body, set, n, terms, excluded })
    }

    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    pub fn set(&self) -> &ReinhardtCompact {
        &self.set
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &[EnvelopeTerm] {
        &self.terms
    }

    pub fn excluded(&self) -> &[[u32; 2]] {
        &self.excluded
    }

    /// Envelope value at log-moduli `x` (entries may be `−∞`).
    pub fn evaluate_log(&self, x: [f64; 2]) -> f64 {
        let n = f64::from(self.n);
        self.terms
            .iter()
            .filter(|t| (0..2).all(|i| t.exponent[i] == 0 || x[i] > f64::NEG_INFINITY))
            .map(|t| t.log_value(x) / n)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn evaluate(&self, z: &Point) -> f64 {
        let [r1, r2] = moduli(z);
        self.evaluate_log([r1.ln(), r2.ln()])
    }
}

/// One-shot envelope evaluation; builds the norm table and discards it.
pub fn monomial_envelope(body: &ConvexBody, set: &ReinhardtCompact, n: u32, z: &Point) -> Result<f64> {
    Ok(MonomialEnvelope::new(body.clone(), set.clone(), n)?.evaluate(z))
}
