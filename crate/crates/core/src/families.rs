//! Named symbol families and rotation constants used across the crate.
//!
//! - `psi_symbol(p, order)`: the disk automorphism `(p - z)/(1 - pz)` shifted
//!   by `1 - p`, truncated as a power series.  Its value at the origin is
//!   exactly `1`, which the constructor materializes exactly (`c₀ = 1.0`), and
//!   it has a single zero in the disk at `1/(1 + p - p²)`.
//! - `phi0()` / `phi1()`: the affine example symbols `0.9 + 0.5 z` and
//!   `0.99 + 0.5 z`.
//! - `golden_rotation_turns()`: the golden rotation number `(√5 - 1)/2`, the
//!   canonical badly-approximable irrational.

use num_complex::Complex64;

use crate::error::{LabError, Result};
use crate::hardy::CoefficientFunction;

/// Truncated power series of `ψ_p(z) = (p - z)/(1 - pz) + 1 - p`.
///
/// Expanding the automorphism gives `ψ_p = 1 + (p² - 1) Σ_{k ≥ 1} p^{k-1} z^k`;
/// the constant term is set to exactly `1.0`.
///
/// # Arguments
///
/// - `p`: automorphism parameter, strictly between 0 and 1;
/// - `order`: truncation order, at least 2.
///
/// # Errors
///
/// [`LabError::Config`] for `p` outside `(0, 1)` or `order < 2`.
pub fn psi_symbol(p: f64, order: usize) -> Result<CoefficientFunction> {
    if !(p > 0.0 && p < 1.0) {
        return Err(LabError::Config(format!(
            "automorphism parameter must lie in (0, 1), got {p}"
        )));
    }
    if order < 2 {
        return Err(LabError::Config("series order must be at least 2".into()));
    }
    let head = p * p - 1.0;
    let mut coeffs = Vec::with_capacity(order);
    coeffs.push(Complex64::ONE);
    let mut pow = 1.0;
    for _ in 1..order {
        coeffs.push(Complex64::new(head * pow, 0.0));
        pow *= p;
    }
    CoefficientFunction::new(coeffs)
}

/// Location of the unique zero of `ψ_p` in the disk.
///
/// Solving `(p - z) = (p - 1)(1 - pz)` gives `z = 1/(1 + p - p²)`, which lies
/// in `(0, 1)` for every `p` in `(0, 1)`.
pub fn psi_zero(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0);
    (1.0 + p - p * p).recip()
}

/// The example symbol `0.9 + 0.5 z`.
pub fn phi0() -> CoefficientFunction {
    CoefficientFunction::from_real(&[0.9, 0.5]).expect("static coefficients")
}

/// The example symbol `0.99 + 0.5 z`.
pub fn phi1() -> CoefficientFunction {
    CoefficientFunction::from_real(&[0.99, 0.5]).expect("static coefficients")
}

/// The golden rotation number `(√5 - 1)/2` measured in turns.
pub fn golden_rotation_turns() -> f64 {
    (5.0_f64.sqrt() - 1.0) / 2.0
}
