//! Error type shared by every module of the crate.
//!
//! All fallible operations return [`Result`]; panics are reserved for violated
//! preconditions that are documented as caller bugs (non-finite scalars, empty
//! coefficient lists passed through `assert!`-guarded internal paths).

use thiserror::Error;

/// Crate-wide error enumeration.
#[derive(Debug, Error)]
pub enum LabError {
    /// Coefficient data is empty or contains a non-finite entry.
    #[error("invalid coefficient data: {0}")]
    InvalidCoefficients(String),

    /// A configuration value is inconsistent (bad tolerance ordering, empty grid, …).
    #[error("configuration error: {0}")]
    Config(String),

    /// A matrix does not carry the dilation-Toeplitz superdiagonal structure.
    #[error("structure violation: {0}")]
    StructureViolation(String),

    /// Every coefficient of a symbol vanishes; no invertible factor exists.
    #[error("singular symbol: {0}")]
    SingularSymbol(String),

    /// The symbol does not vanish at the origin, so no right inverse of the
    /// stated form exists.
    #[error("kernel hypothesis failed: {0}")]
    KernelHypothesisFailed(String),

    /// A dilated evaluation point left the closed unit disk.
    #[error("domain escape: {0}")]
    DomainEscape(String),

    /// An iterative limit did not certify convergence within its cap.
    #[error("not convergent: {0}")]
    NotConvergent(String),

    /// The contour modulus dips below the zero threshold even after the
    /// documented radius perturbations; the winding count is unreliable.
    #[error("zero on or near the contour: {0}")]
    OnCircleZero(String),

    /// The backward dilation map is undefined at an anchor (its defining
    /// denominator vanishes at working tolerance).
    #[error("backward map undefined: {0}")]
    SMapUndefined(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, LabError>;
