//! Exterior calculus on `C^2` in the basis `dz_1, dz_2, dz̄_1, dz̄_2`, and the
//! reduction of boundary 3-forms on the unit sphere to multiples of `dσ`.

use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::Point;

/// Index of `dz_1` in the coframe.
pub const DZ1: usize = 0;
/// Index of `dz_2`.
pub const DZ2: usize = 1;
/// Index of `dz̄_1`.
pub const DZB1: usize = 2;
/// Index of `dz̄_2`.
pub const DZB2: usize = 3;

const SPHERE_TOL: f64 = 1e-9;
const REALITY_TOL: f64 = 1e-12;

/// A complex differential form at a point, stored per basis monomial; the
/// monomial `dθ_{i_1} ∧ … ∧ dθ_{i_k}` with `i_1 < … < i_k` sits at the bitmask
/// `Σ 2^{i_j}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Form {
    coeffs: [Complex64; 16],
}

impl Default for Form {
    fn default() -> Self {
        Self { coeffs: [Complex64::new(0.0, 0.0); 16] }
    }
}

/// Sign of sorting `indices` into increasing order, or `None` on a repeat.
fn permutation_sign(indices: &[usize]) -> Option<f64> {
    let mut sign = 1.0;
    for i in 0..indices.len() {
        for j in i + 1..indices.len() {
            if indices[i] == indices[j] {
                return None;
            }
            if indices[i] > indices[j] {
                sign = -sign;
            }
        }
    }
    Some(sign)
}

impl Form {
    /// `Σ c_i dθ_i`.
    pub fn one_form(c: [Complex64; 4]) -> Self {
        let mut f = Self::default();
        for (i, ci) in c.into_iter().enumerate() {
            f.coeffs[1 << i] = ci;
        }
        f
    }

    /// `c · dθ_{i_1} ∧ … ∧ dθ_{i_k}` for indices in any order.
    pub fn monomial(c: Complex64, indices: &[usize]) -> Self {
        let mut f = Self::default();
        if let Some(sign) = permutation_sign(indices) {
            let mask = indices.iter().fold(0, |m, &i| m | (1 << i));
            f.coeffs[mask] = c * sign;
        }
        f
    }

    /// Coefficient of `dθ_{i_1} ∧ … ∧ dθ_{i_k}`, indices in any order.
    pub fn component(&self, indices: &[usize]) -> Complex64 {
        match permutation_sign(indices) {
            Some(sign) => self.coeffs[indices.iter().fold(0, |m, &i| m | (1 << i))] * sign,
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::default();
        for a in 0..16usize {
            if self.coeffs[a] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for b in 0..16usize {
                if a & b != 0 || other.coeffs[b] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                // moving each basis covector of b past the larger ones of a
                let swaps: u32 = (0..4)
                    .filter(|&j| b & (1 << j) != 0)
                    .map(|j| (a >> (j + 1)).count_ones())
                    .sum();
                let sign = if swaps % 2 == 0 { 1.0 } else { -1.0 };
                out.coeffs[a | b] += self.coeffs[a] * other.coeffs[b] * sign;
            }
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Form {
        let mut out = *self;
        out.coeffs.iter_mut().for_each(|x| *x *= c);
        out
    }

    /// Value on real tangent vectors `v_k ∈ C^2`, where `dz_j(v) = v_j` and
    /// `dz̄_j(v) = conj(v_j)`.
    pub fn evaluate(&self, vectors: &[[Complex64; 2]]) -> Complex64 {
        let k = vectors.len();
        let coframe = |i: usize, v: &[Complex64; 2]| match i {
            DZ1 => v[0],
            DZ2 => v[1],
            DZB1 => v[0].conj(),
            _ => v[1].conj(),
        };
        let mut total = Complex64::new(0.0, 0.0);
        for mask in 0..16usize {
            if mask.count_ones() as usize != k || self.coeffs[mask] == Complex64::new(0.0, 0.0) {
                continue;
            }
            let idx: Vec<usize> = (0..4).filter(|&i| mask & (1 << i) != 0).collect();
            let m: Vec<Vec<Complex64>> =
                idx.iter().map(|&i| vectors.iter().map(|v| coframe(i, v)).collect()).collect();
            total += self.coeffs[mask] * determinant(m);
        }
        total
    }
}

impl Add for Form {
    type Output = Form;

    fn add(mut self, rhs: Form) -> Form {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        self
    }
}

fn determinant(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))
            .unwrap_or(col);
        if m[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            for c in col..n {
                let v = m[col][c];
                m[row][c] -= factor * v;
            }
        }
    }
    det
}

/// Complex 1-jet and Levi form of a real potential `w` at a point:
/// `∂w/∂z_j` and `∂²w/∂z_j∂z̄_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialJet {
    pub grad: [Complex64; 2],
    pub levi: [[Complex64; 2]; 2],
}

impl PotentialJet {
    /// `d^c w = i(∂̄w − ∂w)`.
    pub fn dc(&self) -> Form {
        let i = Complex64::i();
        let [g1, g2] = self.grad;
        // for real w, ∂w/∂z̄_j = conj(∂w/∂z_j)
        Form::one_form([-i * g1, -i * g2, i * g1.conj(), i * g2.conj()])
    }

    /// `dd^c w = 2i ∂∂̄w = 2i Σ w_{j k̄} dz_j ∧ dz̄_k`.
    pub fn ddc(&self) -> Form {
        let two_i = Complex64::new(0.0, 2.0);
        let mut out = Form::default();
        for j in 0..2 {
            for k in 0..2 {
                out = out + Form::monomial(two_i * self.levi[j][k], &[j, 2 + k]);
            }
        }
        out
    }
}

/// Jet of `u = log|z_2|^2 − log(1 − |z_1|^2)` (requires `|z_1| < 1`, `z_2 ≠ 0`).
pub fn log_ratio_jet(z: &Point) -> PotentialJet {
    let s = 1.0 - z[0].norm_sqr();
    let zero = Complex64::new(0.0, 0.0);
    PotentialJet {
        grad: [z[0].conj() / s, z[1].inv()],
        levi: [[Complex64::new(1.0 / (s * s), 0.0), zero], [zero, zero]],
    }
}

/// The boundary 3-form `(d^c w / i) ∧ (dd^c w / i)`: the factor `i` is
/// stripped from both operators, the normalization in which `dσ` is written.
pub fn boundary_wedge(jet: &PotentialJet) -> Form {
    let minus_i = Complex64::new(0.0, -1.0);
    jet.dc().scale(minus_i).wedge(&jet.ddc().scale(minus_i))
}

/// `a dz_2∧dz̄_1∧dz_1 + b dz̄_2∧dz̄_1∧dz_1` on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryForm3 {
    pub a: Complex64,
    pub b: Complex64,
}

/// Result of a reduction `F = c dσ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FormCoefficient {
    Real(f64),
    Complex(Complex64),
}

impl FormCoefficient {
    pub fn as_complex(self) -> Complex64 {
        match self {
            FormCoefficient::Real(x) => Complex64::new(x, 0.0),
            FormCoefficient::Complex(c) => c,
        }
    }

    pub fn real(self) -> Option<f64> {
        match self {
            FormCoefficient::Real(x) => Some(x),
            FormCoefficient::Complex(_) => None,
        }
    }
}

/// Which conjugate differential the sphere relation
/// `z̄_1 dz_1 + z̄_2 dz_2 + z_1 dz̄_1 + z_2 dz̄_2 = 0` is solved for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elimination {
    /// Solve for `dz̄_1` (needs `z_1 ≠ 0`) and reduce through `dσ_1 = z̄_1 dz_1∧dz̄_2∧dz_2`.
    ConjFirst,
    /// Solve for `dz̄_2` (needs `z_2 ≠ 0`) and reduce through `τ = dz̄_1∧dz_1∧dz_2`.
    ConjSecond,
}

impl BoundaryForm3 {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        Self { a, b }
    }

    /// Reads `(a, b)` off a 3-form; errors if it has components outside the span
    /// of the two basis forms.
    pub fn from_form(f: &Form) -> Result<Self> {
        let a = f.component(&[DZ2, DZB1, DZ1]);
        let b = f.component(&[DZB2, DZB1, DZ1]);
        let scale = a.norm().max(b.norm()).max(f64::MIN_POSITIVE);
        let stray = f.component(&[DZ1, DZ2, DZB2]).norm().max(f.component(&[DZ2, DZB1, DZB2]).norm());
        if stray > REALITY_TOL * scale {
            return Err(Error::Unsupported(format!(
                "3-form has components outside dz2^dzb1^dz1, dzb2^dzb1^dz1 (size {stray:e})"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn to_form(&self) -> Form {
        Form::monomial(self.a, &[DZ2, DZB1, DZ1]) + Form::monomial(self.b, &[DZB2, DZB1, DZ1])
    }

    /// Real iff `b = −conj(a)`.
    pub fn is_real(&self) -> bool {
        let scale = self.a.norm().max(self.b.norm());
        (self.b + self.a.conj()).norm() <= REALITY_TOL * scale.max(f64::MIN_POSITIVE)
    }
}

impl Add for BoundaryForm3 {
    type Output = BoundaryForm3;

    fn add(self, rhs: Self) -> Self {
        Self { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Mul<BoundaryForm3> for Complex64 {
    type Output = BoundaryForm3;

    fn mul(self, rhs: BoundaryForm3) -> BoundaryForm3 {
        BoundaryForm3 { a: self * rhs.a, b: self * rhs.b }
    }
}

/// `dσ = z̄_1 dz_1∧dz̄_2∧dz_2 + z̄_2 dz̄_1∧dz_1∧dz_2`.
pub fn surface_form(z: &Point) -> Form {
    Form::monomial(z[0].conj(), &[DZ1, DZB2, DZ2]) + Form::monomial(z[1].conj(), &[DZB1, DZ1, DZ2])
}

fn check_sphere(z: &Point) -> Result<()> {
    let s = z[0].norm_sqr() + z[1].norm_sqr();
    if (s - 1.0).abs() > SPHERE_TOL {
        return Err(Error::OffSphere(s));
    }
    Ok(())
}

/// The coefficient `c` with `F = c dσ` at `z ∈ ∂B_2`, following the chain of
/// substitutions that eliminates `dz̄_1`. Both coordinates must be non-zero.
pub fn reduce_boundary_form(f: &BoundaryForm3, z: &Point) -> Result<FormCoefficient> {
    check_sphere(z)?;
    if z[0].norm() == 0.0 {
        return Err(Error::DegenerateCoordinate("z1 = 0"));
    }
    if z[1].norm() == 0.0 {
        return Err(Error::DegenerateCoordinate("z2 = 0"));
    }
    Ok(classify(f, reduce_with(f, z, Elimination::ConjFirst)))
}

/// Reduction through the chosen elimination; callers ensure the relevant
/// coordinate is non-zero.
pub fn reduce_with(f: &BoundaryForm3, z: &Point, elimination: Elimination) -> Complex64 {
    let (z1, z2) = (z[0], z[1]);
    let (m1, m2) = (z1.norm_sqr(), z2.norm_sqr());
    match elimination {
        Elimination::ConjFirst => {
            // dz2∧dz̄1∧dz1 = (z2/|z1|^2) dσ1, dz̄2∧dz̄1∧dz1 = −(z̄2/|z1|^2) dσ1
            let per_sigma1 = (f.a * z2 - f.b * z2.conj()) / m1;
            // dσ2 = (|z2|^2/|z1|^2) dσ1
            per_sigma1 / (1.0 + m2 / m1)
        }
        Elimination::ConjSecond => {
            // dz2∧dz̄1∧dz1 = τ, dz̄2∧dz̄1∧dz1 = −(z̄2/z2) τ, dσ = (|z|^2/z2) τ
            let per_tau = f.a - f.b * z2.conj() / z2;
            per_tau * z2 / (m1 + m2)
        }
    }
}

fn classify(f: &BoundaryForm3, c: Complex64) -> FormCoefficient {
    if f.is_real() {
        FormCoefficient::Real(c.re)
    } else {
        FormCoefficient::Complex(c)
    }
}

/// The two half-sphere pieces of `(dd^c V_{P_∞,B_2})^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `u = log|z_2|^2 − log(1 − |z_1|^2)`, supported where `|z_2| ≥ |z_1|`.
    U,
    /// `v = log|z_1|^2 − log(1 − |z_2|^2)`, supported where `|z_1| ≥ |z_2|`.
    V,
}

/// The boundary form `(d^c w/i) ∧ (dd^c w/i)` of a branch, in the coordinates
/// where the branch is `u` (for [`Branch::V`] the coordinates are swapped;
/// `dσ` is invariant under the swap).
pub fn branch_form(z: &Point, branch: Branch) -> Result<(BoundaryForm3, Point)> {
    check_sphere(z)?;
    let w = match branch {
        Branch::U => *z,
        Branch::V => [z[1], z[0]],
    };
    if w[1].norm() == 0.0 {
        return Err(Error::DegenerateCoordinate(match branch {
            Branch::U => "branch u needs z2 != 0",
            Branch::V => "branch v needs z1 != 0",
        }));
    }
    let form = BoundaryForm3::from_form(&boundary_wedge(&log_ratio_jet(&w)))?;
    Ok((form, w))
}

/// `¼ (d^c w ∧ dd^c w) / dσ` for the branch `w ∈ {u, v}`: `1/|z_2|^4` or `1/|z_1|^4`.
pub fn wedge_density(z: &Point, branch: Branch) -> Result<f64> {
    let (form, w) = branch_form(z, branch)?;
    let elimination = if w[0].norm() > 0.0 { Elimination::ConjFirst } else { Elimination::ConjSecond };
    let c = classify(&form, reduce_with(&form, &w, elimination));
    match c {
        FormCoefficient::Real(x) => Ok(0.25 * x),
        FormCoefficient::Complex(c) => Err(Error::Unsupported(format!("non-real boundary density {c}"))),
    }
}

/// Coefficient of `dz_1∧dz̄_1` in `dd^c u / i`.
pub fn ddc_u_coefficient(z: &Point) -> f64 {
    let ddc = log_ratio_jet(z).ddc().scale(Complex64::new(0.0, -1.0));
    ddc.component(&[DZ1, DZB1]).re
}
