use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid exponent q = {0}: must satisfy q >= 1")]
    InvalidExponent(f64),

    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("angle {0} outside [0, pi/2]")]
    AngleOutOfRange(f64),

    #[error("invalid torus profile: {0}")]
    InvalidProfile(String),

    #[error("invalid sector [{0}, {1}]")]
    InvalidSector(f64, f64),

    #[error("point with |z| = {modulus} lies outside the ball of radius {radius}")]
    OutsideDomain { modulus: f64, radius: f64 },

    #[error("point is off the unit sphere: |z|^2 = {0}")]
    OffSphere(f64),

    #[error("degenerate coordinate: {0}")]
    DegenerateCoordinate(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite ratio at psi = {psi}, rho = {rho}")]
    NonFiniteRatio { psi: f64, rho: f64 },

    #[error("slope {0:?} falls outside the raster window")]
    RasterOverflow([f64; 2]),

    #[error("failed to read input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
