use thiserror::Error;

pub type Result<T, E = QuatError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuatError {
    #[error("matrix is not a quaternion image: structural deviation {deviation:e} exceeds {tol:e}")]
    MatrixStructure { deviation: f64, tol: f64 },

    #[error("not a unit pure quaternion (real part {real}, norm {norm})")]
    NotImaginaryUnit { real: f64, norm: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operators live on different slices")]
    SliceMismatch,

    #[error("dimension must be at least {min}, got {found}")]
    DimensionTooSmall { min: usize, found: usize },

    #[error("moment of order {order} exceeds the grid's certified radial degree {certified}")]
    BeyondCertificate { order: usize, certified: usize },

    #[error("Hermite parameter s = {0} outside [0.01, 0.99]")]
    HermiteParameter(f64),

    #[error("invalid quadrature order: {0}")]
    QuadratureOrder(String),
}
