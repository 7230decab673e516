//! Truncated coefficient-space matrices for the shift commutant.
//!
//! The operators of interest factor as `T = R_λ φ(B)`: a diagonal dilation
//! `R_λ = diag(λ^i)` composed with an analytic function of the backward shift,
//! which is the upper-triangular Toeplitz matrix with entry `(i, j) = c_{j-i}`.
//! The product therefore has entries `λ^i c_{j-i}`: constant-up-to-`λ^i`
//! superdiagonals.  This module builds those matrices, verifies the
//! intertwining identity `B X = λ X B` on truncations, recovers the symbol
//! from a matrix, estimates operator norms, and constructs the explicit right
//! inverse available when the symbol vanishes at the origin.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{LabError, Result};
use crate::hardy::CoefficientFunction;

/// A square matrix acting on truncated Hardy coefficient vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    m: DMatrix<Complex64>,
}

impl OperatorMatrix {
    /// Wraps an explicit square matrix.
    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(LabError::Config(format!(
                "operator matrix must be square and non-empty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(Self { m })
    }

    /// The identity.
    pub fn identity(order: usize) -> Self {
        assert!(order >= 1);
        Self {
            m: DMatrix::identity(order, order),
        }
    }

    /// The backward shift truncation: entry `(i, i+1) = 1`.
    pub fn backward_shift(order: usize) -> Self {
        assert!(order >= 1);
        let mut m = DMatrix::zeros(order, order);
        for i in 0..order.saturating_sub(1) {
            m[(i, i + 1)] = Complex64::ONE;
        }
        Self { m }
    }

    /// The forward shift truncation: entry `(i+1, i) = 1`.
    pub fn forward_shift(order: usize) -> Self {
        assert!(order >= 1);
        let mut m = DMatrix::zeros(order, order);
        for i in 0..order.saturating_sub(1) {
            m[(i + 1, i)] = Complex64::ONE;
        }
        Self { m }
    }

    /// The dilation `R_λ = diag(λ^i)`, with `λ^0 = 1` even for `λ = 0`.
    pub fn dilation(lambda: Complex64, order: usize) -> Self {
        assert!(order >= 1);
        assert!(lambda.re.is_finite() && lambda.im.is_finite());
        let mut m = DMatrix::zeros(order, order);
        let mut pow = Complex64::ONE;
        for i in 0..order {
            m[(i, i)] = pow;
            pow *= lambda;
        }
        Self { m }
    }

    /// The upper-triangular Toeplitz matrix of `φ(B)`: entry `(i, j) = c_{j-i}`.
    pub fn multiplier_of_b(phi: &CoefficientFunction, order: usize) -> Self {
        assert!(order >= 1);
        let mut m = DMatrix::zeros(order, order);
        for i in 0..order {
            for j in i..order {
                m[(i, j)] = phi.coeff(j - i);
            }
        }
        Self { m }
    }

    /// The dilation-commutant operator `R_λ φ(B)`: entry `(i, j) = λ^i c_{j-i}`.
    ///
    /// Any finite `λ` is accepted; whether a bounded infinite-dimensional
    /// counterpart exists is the classifier's concern, not the builder's.
    pub fn build_eigenoperator(
        lambda: Complex64,
        phi: &CoefficientFunction,
        order: usize,
    ) -> Result<Self> {
        if !(lambda.re.is_finite() && lambda.im.is_finite()) {
            return Err(LabError::Config("dilation parameter must be finite".into()));
        }
        if order == 0 {
            return Err(LabError::Config("truncation order must be positive".into()));
        }
        let mut m = DMatrix::zeros(order, order);
        let mut pow = Complex64::ONE;
        for i in 0..order {
            for j in i..order {
                m[(i, j)] = pow * phi.coeff(j - i);
            }
            pow *= lambda;
        }
        Ok(Self { m })
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    /// Entry access.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    /// Borrow of the underlying matrix.
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        Self {
            m: &self.m * &other.m,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            m: self.m.adjoint(),
        }
    }

    /// Applies the matrix to a coefficient vector (padded or cut to fit).
    pub fn apply(&self, f: &CoefficientFunction) -> CoefficientFunction {
        let n = self.dim();
        let v = DVector::from_fn(n, |i, _| f.coeff(i));
        let out = &self.m * v;
        CoefficientFunction::new(out.iter().copied().collect())
            .expect("matrix application preserves finiteness")
    }

    /// Applies the matrix to a raw vector.
    pub fn apply_vec(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.m * v
    }

    /// Norm of `B·X - λ·X·B` restricted to the leading `(n-1)×(n-1)` block,
    /// where the truncation cannot interfere.  Zero (up to rounding) exactly
    /// when `X` carries the dilation-Toeplitz structure for this `λ`.
    pub fn intertwining_residual(&self, lambda: Complex64) -> f64 {
        let n = self.dim();
        if n == 1 {
            return 0.0;
        }
        let b = Self::backward_shift(n);
        let diff = &b.m * &self.m - (&self.m * &b.m).map(|x| x * lambda);
        let block = diff.view((0, 0), (n - 1, n - 1)).into_owned();
        largest_singular_value(&block)
    }

    /// Recovers the symbol coefficients from a dilation-Toeplitz matrix.
    ///
    /// Reads `c_p` off the first row and verifies every entry against
    /// `entry(i, i+p) = c_p λ^i` (and zero below the diagonal) within `tol`.
    ///
    /// # Errors
    ///
    /// [`LabError::StructureViolation`] naming the first offending entry.
    pub fn superdiagonal_structure(
        &self,
        lambda: Complex64,
        tol: f64,
    ) -> Result<CoefficientFunction> {
        assert!(lambda.norm() > 0.0, "dilation parameter must be non-zero");
        assert!(tol >= 0.0 && tol.is_finite());
        let n = self.dim();
        let coeffs: Vec<Complex64> = (0..n).map(|p| self.m[(0, p)]).collect();
        let mut pow = Complex64::ONE;
        for i in 0..n {
            for j in 0..n {
                let expect = if j < i {
                    Complex64::ZERO
                } else {
                    coeffs[j - i] * pow
                };
                let err = (self.m[(i, j)] - expect).norm();
                if err > tol {
                    return Err(LabError::StructureViolation(format!(
                        "entry ({i}, {j}) deviates from the dilation-Toeplitz form by {err:.3e}"
                    )));
                }
            }
            pow *= lambda;
        }
        CoefficientFunction::new(coeffs)
    }

    /// Largest singular value of the truncation, a lower bound for the norm
    /// of the underlying operator.  Computed by deterministic power iteration
    /// on `AᴴA` (Rayleigh quotients converge to `σ_max²` from below).
    pub fn operator_norm_estimate(&self) -> f64 {
        largest_singular_value(&self.m)
    }

    /// The right inverse `C = ψ(B)^{-1} F^p R_{1/λ}` available when
    /// `φ = z^p ψ` with `p ≥ 1` and `ψ(0) ≠ 0`: then `A·C` is the identity on
    /// the leading `(n - p)` block, where `A = R_λ φ(B)`.
    ///
    /// # Errors
    ///
    /// - [`LabError::SingularSymbol`] if every coefficient vanishes;
    /// - [`LabError::KernelHypothesisFailed`] if `φ(0) ≠ 0` (`p = 0`);
    /// - [`LabError::Config`] if `λ = 0` or the dilation `λ^{-i}` overflows
    ///   at this truncation order.
    pub fn right_inverse_c(
        lambda: Complex64,
        phi: &CoefficientFunction,
        order: usize,
    ) -> Result<Self> {
        if lambda.norm() == 0.0 {
            return Err(LabError::Config(
                "right inverse requires a non-zero dilation parameter".into(),
            ));
        }
        let p = match phi.coeffs().iter().position(|c| c.norm() > 0.0) {
            None => {
                return Err(LabError::SingularSymbol(
                    "all symbol coefficients vanish".into(),
                ))
            }
            Some(0) => {
                return Err(LabError::KernelHypothesisFailed(
                    "symbol does not vanish at the origin".into(),
                ))
            }
            Some(p) => p,
        };
        // Reciprocal power series of ψ = Σ c_{p+k} z^k to the truncation order.
        let psi: Vec<Complex64> = phi.coeffs()[p..].to_vec();
        let mut inv = vec![Complex64::ZERO; order];
        inv[0] = Complex64::ONE / psi[0];
        for k in 1..order {
            let mut acc = Complex64::ZERO;
            for j in 1..=k.min(psi.len() - 1) {
                acc += psi[j] * inv[k - j];
            }
            inv[k] = -acc / psi[0];
        }
        let apinv = Self::multiplier_of_b(&CoefficientFunction::new(inv)?, order);

        // F^p directly as a band matrix.
        let mut fp = DMatrix::zeros(order, order);
        for i in 0..order.saturating_sub(p) {
            fp[(i + p, i)] = Complex64::ONE;
        }

        let inv_lambda = Complex64::ONE / lambda;
        let mut r = DMatrix::zeros(order, order);
        let mut pow = Complex64::ONE;
        for i in 0..order {
            if !(pow.re.is_finite() && pow.im.is_finite()) {
                return Err(LabError::Config(format!(
                    "dilation power 1/λ^{i} overflows at this truncation order"
                )));
            }
            r[(i, i)] = pow;
            pow *= inv_lambda;
        }
        Ok(Self {
            m: apinv.m * fp * r,
        })
    }
}

/// Largest singular value via power iteration on `AᴴA`.
///
/// Deterministic start vector; the Rayleigh quotient increases monotonically
/// and converges to `σ_max²` from below, so the returned value never
/// overstates the norm.
pub(crate) fn largest_singular_value(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    if n == 0 {
        return 0.0;
    }
    let ah = m.adjoint();
    // Slightly uneven start to avoid landing in an invariant null subspace.
    let mut v = DVector::from_fn(n, |i, _| Complex64::new(1.0 + (i as f64) / (n as f64), 0.0));
    let mut norm = v.norm();
    v /= Complex64::new(norm, 0.0);
    let mut rayleigh = 0.0f64;
    for _ in 0..512 {
        let w = &ah * (m * &v);
        norm = w.norm();
        if norm == 0.0 || !norm.is_finite() {
            return if norm == 0.0 { 0.0 } else { f64::INFINITY };
        }
        let next = v.dotc(&w).re.max(0.0);
        v = w / Complex64::new(norm, 0.0);
        if (next - rayleigh).abs() <= 1e-13 * next.max(1.0) {
            rayleigh = next;
            break;
        }
        rayleigh = next;
    }
    rayleigh.max(0.0).sqrt()
}
