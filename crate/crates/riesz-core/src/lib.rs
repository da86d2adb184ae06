//! Numerical toolkit for second-order discrete Riesz transforms on finite
//! products of cyclic groups `Z/m_1Z x ... x Z/m_NZ`.
//!
//! The crate is organised around one chain of ideas:
//!
//! * [`lattice`] holds dense complex-valued functions on the group,
//! * [`spectral`] moves them to and from the frequency side,
//! * [`operators`] builds discrete derivatives, the Laplacian, and the
//!   second-order Riesz multipliers `R_j^2` and `R_alpha^2`,
//! * [`heat`] runs the semigroup `e^{t Delta}` and its ODE cross-check,
//! * [`quadrature`] integrates heat-decayed quantities over `t in (0, inf)`
//!   with a certified tail bound,
//! * [`embedding`] verifies the representation identity and the bilinear
//!   inequalities with constants `p* - 1` and the Choi constant,
//! * [`extremal`] searches for functions that saturate the operator-norm
//!   bound.
//!
//! All storage is row-major with the last axis fastest, matching the layout
//! of multidimensional FFT packages.

#![forbid(unsafe_code)]

use thiserror::Error;

pub mod embedding;
pub mod extremal;
pub mod heat;
pub mod io;
pub mod lattice;
pub mod operators;
mod par;
pub mod quadrature;
pub mod spectral;
pub mod tolerances;

pub use lattice::{GroupSpec, LatticeFunction, LatticePoint, Side};

/// Errors shared across the crate.
///
/// Numerical invariant violations (negative kernels, bound violations) are
/// errors rather than warnings: the caller must not keep computing with a
/// state that contradicts the mathematics.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group must have at least one axis and every order must be >= 2")]
    InvalidGroup,

    #[error("group size overflows addressable memory")]
    GroupTooLarge,

    #[error("axis {axis} out of range for a group with {dims} axes")]
    AxisOutOfRange { axis: usize, dims: usize },

    #[error("point has {got} coordinates but the group has {expected} axes")]
    PointDimensionMismatch { got: usize, expected: usize },

    #[error("functions live on different groups")]
    GroupMismatch,

    #[error("coefficient vector has {got} entries but the group has {expected} axes")]
    CoefficientLength { got: usize, expected: usize },

    #[error("coefficient magnitude {magnitude} exceeds 1 at axis {axis}")]
    CoefficientBound { axis: usize, magnitude: f64 },

    #[error("coefficients must be real for the signed-part inequality; axis {axis} has imaginary part {imaginary}")]
    CoefficientNotReal { axis: usize, imaginary: f64 },

    #[error("heat flow requires t >= 0, got {t}")]
    NegativeTime { t: f64 },

    #[error("heat kernel entry {value} at index {index} is below -{tolerance}; semigroup invariant violated")]
    NegativeKernel {
        index: usize,
        value: f64,
        tolerance: f64,
    },

    #[error("ODE oracle needs at least one step")]
    ZeroSteps,

    #[error("quadrature spec is infeasible: tail bound {tail_bound} exceeds tolerance {tolerance}; need t_max >= {required_t_max}")]
    QuadratureInfeasible {
        tail_bound: f64,
        tolerance: f64,
        required_t_max: f64,
    },

    #[error("quadrature spec is degenerate: {reason}")]
    QuadratureDegenerate { reason: String },

    #[error("Lebesgue exponent must satisfy p > 1 and be finite, got {p}")]
    InvalidExponent { p: f64 },

    #[error("norm exponent must satisfy p >= 1, got {p}")]
    InvalidNormExponent { p: f64 },

    #[error("function is identically zero; the ratio is undefined")]
    ZeroFunction,

    #[error("input must be real-valued; entry {index} has imaginary part {imaginary}")]
    NotRealValued { index: usize, imaginary: f64 },

    #[error("search ratio {ratio} exceeds the bound {bound} by more than {slack}; operator or search is corrupted")]
    BoundViolation { ratio: f64, bound: f64, slack: f64 },

    #[error("unrecognised function file: {reason}")]
    MalformedFunctionFile { reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
