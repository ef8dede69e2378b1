use thiserror::Error;

/// Failures reported by the solvers in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval: need a < b, got a = {a}, b = {b}")]
    InvalidInterval { a: f64, b: f64 },

    #[error("grid must have at least one subinterval")]
    ZeroSubdivisions,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular to working precision (pivot {pivot:e} at column {column})")]
    SingularMatrix { column: usize, pivot: f64 },

    #[error("non-finite value encountered in {context}")]
    NonFinite { context: &'static str },

    #[error("point {x} lies outside the open interval ({a}, {b})")]
    OutsideOpenInterval { x: f64, a: f64, b: f64 },

    #[error("invalid quadrature setting: {0}")]
    InvalidQuadrature(String),

    #[error("integrand does not decay like s^-3 beyond s = {s_max}")]
    IntegrandNotDecaying { s_max: f64 },

    #[error("antiderivative f is required for this solution path")]
    MissingAntiderivative,

    #[error("kernel K1 is required for the Fredholm reduction")]
    MissingK1,

    #[error("supplied functions are inconsistent: {0}")]
    Inconsistent(String),

    #[error("solver residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },

    #[error("invalid material parameters: {0}")]
    InvalidMaterial(String),

    #[error("porosity parameter N = {0} is outside [0, 1)")]
    PorosityOutOfRange(f64),

    #[error("degenerate tip fit: {0}")]
    DegenerateFit(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
