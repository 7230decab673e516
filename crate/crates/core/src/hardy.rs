//! Coefficient-space model of the Hardy space of the unit disk.
//!
//! Analytic functions are represented by truncated Taylor coefficient vectors.
//! The module provides:
//!
//! - [`CoefficientFunction`]: a finite coefficient vector with evaluation,
//!   norms, inner products, dilation, coefficient conjugation and boundary
//!   modulus maxima;
//! - [`ReproducingKernel`]: the kernel `k_a(z) = 1/(1 - conj(a) z)` with both
//!   closed-form and materialized (truncated) representations.
//!
//! Conventions fixed here and used by every other module:
//!
//! - the inner product is `⟨f, g⟩ = Σ f_k conj(g_k)` (conjugate-linear in the
//!   second slot), so pairing against a materialized kernel reproduces point
//!   evaluation: `⟨f, k_a⟩ = f(a)`;
//! - `dilate(f, μ)` multiplies coefficient `k` by `μ^k`, i.e. it represents
//!   `z ↦ f(μz)`; in particular `dilate(k_a, μ) = k_{conj(μ) a}`;
//! - `bar_symbol(f)` conjugates every coefficient, representing
//!   `z ↦ conj(f(conj(z)))`.

use num_complex::Complex64;

use crate::error::{LabError, Result};

/// Golden-ratio constant used by the one-dimensional maximum refinement.
const INV_GOLDEN: f64 = 0.618_033_988_749_894_9;

/// A truncated Taylor series `f(z) = Σ_{k < n} c_k z^k` on the unit disk.
///
/// Invariants: at least one coefficient, all entries finite.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFunction {
    coeffs: Vec<Complex64>,
}

impl CoefficientFunction {
    /// Wraps a coefficient vector.
    ///
    /// # Errors
    ///
    /// [`LabError::InvalidCoefficients`] if the vector is empty or any entry
    /// is non-finite.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(LabError::InvalidCoefficients(
                "coefficient vector is empty".into(),
            ));
        }
        if let Some(k) = coeffs
            .iter()
            .position(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(LabError::InvalidCoefficients(format!(
                "coefficient {k} is not finite"
            )));
        }
        Ok(Self { coeffs })
    }

    /// Builds a function from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The constant function `c`.
    pub fn constant(c: Complex64) -> Self {
        Self { coeffs: vec![c] }
    }

    /// The truncation order (number of stored coefficients).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// True when only the constant coefficient is stored.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Read access to the coefficient slice.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `k`, zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::ZERO)
    }

    /// Index of the last coefficient with modulus above `tol` (`None` when
    /// every coefficient is below it).
    pub fn effective_degree(&self, tol: f64) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.norm() > tol)
    }

    /// Evaluates the series at `z` by Horner's rule.
    ///
    /// The point must be finite; values with `|z| > 1` are meaningful only for
    /// polynomial-intent data, which the caller asserts.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        assert!(
            z.re.is_finite() && z.im.is_finite(),
            "evaluation point must be finite"
        );
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// The Hardy norm `sqrt(Σ |c_k|²)`.
    pub fn h2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Inner product `Σ f_k conj(g_k)`, conjugate-linear in `other`.
    ///
    /// Missing coefficients of the shorter vector count as zero.
    pub fn h2_inner(&self, other: &Self) -> Complex64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(f, g)| f * g.conj())
            .sum()
    }

    /// The dilation `z ↦ f(μz)`: coefficient `k` is multiplied by `μ^k`.
    ///
    /// `μ` must be finite.
    pub fn dilate(&self, mu: Complex64) -> Self {
        assert!(
            mu.re.is_finite() && mu.im.is_finite(),
            "dilation parameter must be finite"
        );
        let mut pow = Complex64::ONE;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                let out = c * pow;
                pow *= mu;
                out
            })
            .collect();
        Self { coeffs }
    }

    /// Coefficient-wise conjugation, representing `z ↦ conj(f(conj(z)))`.
    pub fn bar_symbol(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// Maximum modulus on the circle `|z| = radius`, located by dense
    /// sampling and sharpened by golden-section refinement around the best
    /// sample.  For polynomial data at `radius = 1` this equals the supremum
    /// over the closed disk by the maximum principle.
    ///
    /// # Arguments
    ///
    /// - `radius`: circle radius in `(0, 1]`;
    /// - `samples`: number of equispaced angles, at least 64.
    pub fn sup_modulus(&self, radius: f64, samples: usize) -> f64 {
        assert!(radius > 0.0 && radius <= 1.0, "radius must lie in (0, 1]");
        assert!(samples >= 64, "at least 64 samples are required");
        let eval = |theta: f64| self.evaluate(Complex64::from_polar(radius, theta)).norm();
        let step = std::f64::consts::TAU / samples as f64;
        let mut best_k = 0usize;
        let mut best = f64::MIN;
        for k in 0..samples {
            let v = eval(k as f64 * step);
            if v > best {
                best = v;
                best_k = k;
            }
        }
        let center = best_k as f64 * step;
        golden_max(eval, center - step, center + step, 80).max(best)
    }

    /// Product of two series truncated to `order` coefficients.
    pub fn truncated_mul(&self, other: &Self, order: usize) -> Self {
        assert!(order >= 1, "truncation order must be positive");
        let n = order.min(self.len() + other.len() - 1);
        let mut coeffs = vec![Complex64::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i >= n {
                break;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    /// Coefficient-wise difference, padded with zeros on the shorter side.
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Self { coeffs }
    }

    /// Scalar multiple.
    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Termwise derivative `f'`.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(Complex64::ZERO);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Self { coeffs }
    }

    /// `Σ_k k·|c_k|`, an upper bound for `|f'|` on the closed unit disk and
    /// hence a Lipschitz constant for `z ↦ |f(z)|` there.
    pub fn derivative_coeff_bound(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| k as f64 * c.norm())
            .sum()
    }

    /// `Σ_k |c_k| r^k`, an upper bound for `|f|` on the closed disk of radius `r`.
    pub fn coeff_sum_at_radius(&self, r: f64) -> f64 {
        assert!(r >= 0.0 && r.is_finite());
        let mut pow = 1.0;
        self.coeffs
            .iter()
            .map(|c| {
                let out = c.norm() * pow;
                pow *= r;
                out
            })
            .sum()
    }

    /// Copy extended (or cut) to exactly `order` coefficients.
    pub fn resized(&self, order: usize) -> Self {
        assert!(order >= 1);
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order, Complex64::ZERO);
        Self { coeffs }
    }
}

/// The reproducing kernel `k_a(z) = 1/(1 - conj(a) z)` at an anchor `a` in
/// the open disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReproducingKernel {
    anchor: Complex64,
}

impl ReproducingKernel {
    /// Creates the kernel at `a`.
    ///
    /// # Errors
    ///
    /// [`LabError::InvalidCoefficients`] unless `|a| < 1` and `a` is finite.
    pub fn new(anchor: Complex64) -> Result<Self> {
        if !(anchor.re.is_finite() && anchor.im.is_finite()) || anchor.norm() >= 1.0 {
            return Err(LabError::InvalidCoefficients(format!(
                "kernel anchor must lie strictly inside the disk, got {anchor}"
            )));
        }
        Ok(Self { anchor })
    }

    /// The anchor point.
    pub fn anchor(&self) -> Complex64 {
        self.anchor
    }

    /// Truncated coefficient vector `(conj(a)^k)_{k < order}`.
    pub fn materialize(&self, order: usize) -> CoefficientFunction {
        assert!(order >= 1);
        let q = self.anchor.conj();
        let mut pow = Complex64::ONE;
        let coeffs = (0..order)
            .map(|_| {
                let out = pow;
                pow *= q;
                out
            })
            .collect();
        CoefficientFunction { coeffs }
    }

    /// Closed-form evaluation `1/(1 - conj(a) z)`.
    pub fn evaluate_closed(&self, z: Complex64) -> Complex64 {
        Complex64::ONE / (Complex64::ONE - self.anchor.conj() * z)
    }

    /// Closed-form Hardy norm `1/sqrt(1 - |a|²)`.
    pub fn h2_norm_closed(&self) -> f64 {
        (1.0 - self.anchor.norm_sqr()).sqrt().recip()
    }
}

/// Golden-section search for the maximum of a smooth scalar function on
/// `[a, b]`.  Deterministic; `iters` interval contractions.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64, iters: usize) -> f64 {
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_GOLDEN * (hi - lo);
    let mut x2 = lo + INV_GOLDEN * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_GOLDEN * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_GOLDEN * (hi - lo);
            f1 = f(x1);
        }
    }
    f1.max(f2)
}
