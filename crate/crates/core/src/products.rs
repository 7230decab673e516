//! Finite and infinite products of dilated symbols.
//!
//! Iterating an eigenoperator built from a symbol `phi` and a scalar `lambda`
//! produces, on reproducing kernels and on the constant function, scalar
//! factors of the form `phi(mu^j z)` for a kind-specific ratio `mu`.  This
//! module evaluates those running products in log scale (so thousands of
//! factors neither overflow nor underflow), produces their coefficient
//! truncations, and certifies infinite-product limits with explicit tail
//! bounds.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{LabError, Result};
use crate::hardy::CoefficientFunction;

/// Ratio magnitudes within this distance of 1 are treated as exactly
/// unimodular, enabling drift-free angle powering.
const UNIMODULAR_TOL: f64 = 1e-12;

/// Slack admitted on the closed unit disk before an evaluation argument is
/// declared to have escaped.
const DOMAIN_TOL: f64 = 1e-9;

/// Default factor cap for [`infinite_product_limit`].
const DEFAULT_PRODUCT_CAP: usize = 1024;

/// Which running product a [`ProductSequence`] accumulates.
///
/// With ratio `r` and base symbol `b` as listed, the `n`-factor product is
/// the product of `b(r^j z)` over the kind-specific exponent range:
///
/// * `Phi`:   base `phi`,  ratio `lambda`,          exponents `0..n`
/// * `Psi`:   base `phi~`, ratio `conj(lambda)`,    exponents `0..n`
/// * `Omega`: base `phi~`, ratio `1/conj(lambda)`,  exponents `1..=n`
///
/// where `phi~` is the coefficient-conjugated symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    /// Forward product driven by `lambda` itself.
    Phi,
    /// Conjugate product governing scalar factors on kernel orbits.
    Psi,
    /// Reciprocal-ratio product governing right-inverse orbits.
    Omega,
}

impl ProductKind {
    /// Stable lowercase name used in messages and CSV headers.
    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Phi => "phi",
            ProductKind::Psi => "psi",
            ProductKind::Omega => "omega",
        }
    }
}

/// A complex number carried as `(log modulus, phase)`.
///
/// Products of many factors are accumulated additively in this
/// representation, so moduli like `2^5000` are representable.  An exact zero
/// factor is stored as `log_abs = -inf` and absorbs every later factor.
#[derive(Clone, Copy, Debug)]
pub struct LogComplex {
    log_abs: f64,
    phase: f64,
}

impl LogComplex {
    /// The multiplicative identity.
    pub const ONE: LogComplex = LogComplex {
        log_abs: 0.0,
        phase: 0.0,
    };

    /// Converts an ordinary complex number into log form.
    ///
    /// The argument must be finite.
    pub fn from_complex(w: Complex64) -> Self {
        assert!(w.re.is_finite() && w.im.is_finite(), "non-finite factor");
        let r = w.norm();
        if r == 0.0 {
            LogComplex {
                log_abs: f64::NEG_INFINITY,
                phase: 0.0,
            }
        } else {
            LogComplex {
                log_abs: r.ln(),
                phase: w.arg().rem_euclid(TAU),
            }
        }
    }

    /// Multiplies an additional finite factor into the running product.
    pub fn mul_by(&mut self, w: Complex64) {
        assert!(w.re.is_finite() && w.im.is_finite(), "non-finite factor");
        if self.is_zero() {
            return;
        }
        let r = w.norm();
        if r == 0.0 {
            self.log_abs = f64::NEG_INFINITY;
            self.phase = 0.0;
            return;
        }
        self.log_abs += r.ln();
        self.phase = (self.phase + w.arg()).rem_euclid(TAU);
    }

    /// Natural logarithm of the modulus (`-inf` for an exact zero).
    pub fn log_abs(&self) -> f64 {
        self.log_abs
    }

    /// Phase in `[0, 2π)`; zero for an exact zero.
    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// Modulus, overflowing to `+inf` when the log exceeds f64 range.
    pub fn abs(&self) -> f64 {
        self.log_abs.exp()
    }

    /// Whether an exactly-zero factor has been absorbed.
    pub fn is_zero(&self) -> bool {
        self.log_abs == f64::NEG_INFINITY
    }

    /// Converts back to a rectangular complex number.
    ///
    /// Overflows to infinite components when the modulus exceeds f64 range.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            Complex64::ZERO
        } else {
            Complex64::from_polar(self.log_abs.exp(), self.phase)
        }
    }
}

/// How ratio powers are formed while walking a product.
#[derive(Clone, Copy, Debug)]
enum PowerScheme {
    /// `|ratio| = 1`: powers are regenerated from the accumulated angle
    /// `theta * j` reduced mod 2π, so no modulus drift accumulates over
    /// hundred-thousand-factor schedules.
    Unimodular { theta: f64 },
    /// General ratio: powers are maintained by incremental multiplication.
    General,
}

/// A lazily-walked running product of dilated symbol evaluations.
#[derive(Clone, Debug)]
pub struct ProductSequence {
    kind: ProductKind,
    base: CoefficientFunction,
    ratio: Complex64,
    scheme: PowerScheme,
}

impl ProductSequence {
    /// Prepares the product of the given kind for `symbol` and `lambda`.
    ///
    /// The symbol is conjugated internally for the `Psi` and `Omega` kinds;
    /// callers always pass the original symbol.
    ///
    /// # Errors
    ///
    /// Returns [`LabError::Config`] when `lambda` is not finite, or when the
    /// `Omega` kind is requested with `lambda = 0` (its ratio `1/conj(lambda)`
    /// is undefined there).
    pub fn new(kind: ProductKind, symbol: &CoefficientFunction, lambda: Complex64) -> Result<Self> {
        if !(lambda.re.is_finite() && lambda.im.is_finite()) {
            return Err(LabError::Config("lambda must be finite".into()));
        }
        let (base, ratio) = match kind {
            ProductKind::Phi => (symbol.clone(), lambda),
            ProductKind::Psi => (symbol.bar_symbol(), lambda.conj()),
            ProductKind::Omega => {
                if lambda.norm() == 0.0 {
                    return Err(LabError::Config(
                        "omega product needs lambda != 0 (ratio is 1/conj(lambda))".into(),
                    ));
                }
                (symbol.bar_symbol(), lambda.conj().finv())
            }
        };
        let scheme = if (ratio.norm() - 1.0).abs() <= UNIMODULAR_TOL {
            PowerScheme::Unimodular { theta: ratio.arg() }
        } else {
            PowerScheme::General
        };
        Ok(ProductSequence {
            kind,
            base,
            ratio,
            scheme,
        })
    }

    /// The product kind this sequence walks.
    pub fn kind(&self) -> ProductKind {
        self.kind
    }

    /// The ratio whose powers dilate the evaluation point.
    pub fn ratio(&self) -> Complex64 {
        self.ratio
    }

    /// First ratio exponent consumed by the product (1 for `Omega`, else 0).
    fn exponent_offset(&self) -> usize {
        match self.kind {
            ProductKind::Omega => 1,
            _ => 0,
        }
    }

    /// Ratio power for an absolute exponent, per the active scheme.
    fn power_at(&self, exponent: usize) -> Complex64 {
        match self.scheme {
            PowerScheme::Unimodular { theta } => {
                Complex64::from_polar(1.0, (theta * exponent as f64).rem_euclid(TAU))
            }
            PowerScheme::General => self.ratio.powu(exponent as u32),
        }
    }

    /// Evaluates the `n`-factor product at `z` (in the closed unit disk).
    ///
    /// `n = 0` yields the empty product 1.
    ///
    /// # Errors
    ///
    /// Returns [`LabError::DomainEscape`] when any dilated argument
    /// `ratio^j z` leaves the closed unit disk (beyond a 1e-9 slack), as the
    /// `Omega` kind does for `|lambda| < 1` at any `z != 0`.
    pub fn eval(&self, n: usize, z: Complex64) -> Result<LogComplex> {
        Ok(self.eval_many(&[n], z)?[0])
    }

    /// Evaluates the product at every mark of an increasing schedule.
    ///
    /// Factors are consumed once, so a full schedule costs the same as a
    /// single evaluation at its last mark.  `marks` must be non-empty and
    /// strictly increasing; `z` must be finite.
    ///
    /// # Errors
    ///
    /// Returns [`LabError::DomainEscape`] as for [`ProductSequence::eval`].
    pub fn eval_many(&self, marks: &[usize], z: Complex64) -> Result<Vec<LogComplex>> {
        assert!(!marks.is_empty(), "empty mark schedule");
        assert!(
            marks.windows(2).all(|w| w[0] < w[1]),
            "marks must be strictly increasing"
        );
        assert!(z.re.is_finite() && z.im.is_finite(), "non-finite point");

        let offset = self.exponent_offset();
        let mut running = LogComplex::ONE;
        let mut out = Vec::with_capacity(marks.len());
        let mut consumed = 0usize;
        // Incremental power only used by the general scheme.
        let mut pow = self.power_at(offset);
        for &mark in marks {
            while consumed < mark {
                let exponent = consumed + offset;
                let w = match self.scheme {
                    PowerScheme::Unimodular { .. } => self.power_at(exponent) * z,
                    PowerScheme::General => pow * z,
                };
                if w.norm() > 1.0 + DOMAIN_TOL {
                    return Err(LabError::DomainEscape(format!(
                        "{} product argument |ratio^{} z| = {:.6} leaves the closed disk",
                        self.kind.name(),
                        exponent,
                        w.norm()
                    )));
                }
                running.mul_by(self.base.evaluate(w));
                if let PowerScheme::General = self.scheme {
                    pow *= self.ratio;
                }
                consumed += 1;
            }
            out.push(running);
        }
        Ok(out)
    }
}

/// One-shot evaluation of an `n`-factor product.
///
/// # Errors
///
/// Propagates the construction and domain errors of [`ProductSequence`].
pub fn eval_product(
    kind: ProductKind,
    symbol: &CoefficientFunction,
    lambda: Complex64,
    n: usize,
    z: Complex64,
) -> Result<LogComplex> {
    ProductSequence::new(kind, symbol, lambda)?.eval(n, z)
}

/// Coefficients of the `n`-factor forward product, truncated to `order`.
///
/// The truncation is exact for the low coefficients: coefficient `k` of a
/// product depends only on coefficients `0..=k` of its factors, so the first
/// `order` coefficients returned equal those of the untruncated product.
/// `order` must be at least 1 and `lambda` finite.
pub fn phi_product_coefficients(
    symbol: &CoefficientFunction,
    lambda: Complex64,
    n: usize,
    order: usize,
) -> CoefficientFunction {
    assert!(order >= 1, "order must be at least 1");
    assert!(
        lambda.re.is_finite() && lambda.im.is_finite(),
        "non-finite lambda"
    );
    let mut product = CoefficientFunction::constant(Complex64::ONE).resized(order);
    let mut pow = Complex64::ONE;
    for _ in 0..n {
        product = product.truncated_mul(&symbol.dilate(pow), order);
        pow *= lambda;
    }
    product
}

/// Certified distance from the `n`-factor forward product to every later one.
///
/// For `|lambda| < 1` and `phi(0) = 1`, every `m > n >= 1` satisfies
///
/// ```text
/// ||P_m - P_n||_2 <= ||P_n||_2 * expm1(C r^n / ((1 - r) sqrt(1 - r^2)))
/// ```
///
/// with `C = ||phi - 1||_2` and `r = |lambda|`: on the unit circle the j-th
/// extra factor differs from 1 by at most `C r^j / sqrt(1 - r^2)` (j >= 1),
/// and the product of `(1 + a_j)` is at most `exp(sum a_j)`.
///
/// # Errors
///
/// Returns [`LabError::Config`] unless `|lambda| < 1` and `phi(0)` is 1 to
/// within 1e-12.
pub fn tail_bound_after(
    symbol: &CoefficientFunction,
    lambda: Complex64,
    n: usize,
    order: usize,
) -> Result<f64> {
    assert!(n >= 1, "tail bound requires at least one factor");
    let r = check_infinite_product_inputs(symbol, lambda)?;
    let norm = phi_product_coefficients(symbol, lambda, n, order).h2_norm();
    Ok(norm * tail_ratio(deviation_norm(symbol), r, n))
}

/// `||phi - 1||_2`, the deviation size entering every tail estimate.
fn deviation_norm(symbol: &CoefficientFunction) -> f64 {
    symbol
        .sub(&CoefficientFunction::constant(Complex64::ONE))
        .h2_norm()
}

/// `expm1(C r^n / ((1 - r) sqrt(1 - r^2)))` for `n >= 1`.
fn tail_ratio(c: f64, r: f64, n: usize) -> f64 {
    (c * r.powi(n as i32) / ((1.0 - r) * (1.0 - r * r).sqrt())).exp_m1()
}

/// Shared validation for the infinite-product entry points.
fn check_infinite_product_inputs(symbol: &CoefficientFunction, lambda: Complex64) -> Result<f64> {
    if !(lambda.re.is_finite() && lambda.im.is_finite()) {
        return Err(LabError::Config("lambda must be finite".into()));
    }
    let r = lambda.norm();
    if r >= 1.0 {
        return Err(LabError::Config(format!(
            "infinite product requires |lambda| < 1, got |lambda| = {r:.6}"
        )));
    }
    let origin = symbol.coeff(0);
    if (origin - Complex64::ONE).norm() > 1e-12 {
        return Err(LabError::Config(format!(
            "infinite product requires phi(0) = 1, got phi(0) = {origin}"
        )));
    }
    Ok(r)
}

/// A certified truncation of the infinite forward product.
#[derive(Clone, Debug)]
pub struct InfiniteProductLimit {
    /// First `order` coefficients of the `n_used`-factor product; they agree
    /// with the limit function to within `tail_bound` in H² norm.
    pub h: CoefficientFunction,
    /// Number of factors multiplied before the tail certificate fired.
    pub n_used: usize,
    /// Certified H² distance from `h` to the limit (and to every later
    /// finite product).
    pub tail_bound: f64,
    /// Human-readable statement of the certificate, with its constants.
    pub bound_description: String,
}

/// Computes the infinite forward product with the default factor cap.
///
/// # Errors
///
/// As for [`infinite_product_limit_with_cap`] with a cap of 1024.
pub fn infinite_product_limit(
    symbol: &CoefficientFunction,
    lambda: Complex64,
    order: usize,
    tol: f64,
) -> Result<InfiniteProductLimit> {
    infinite_product_limit_with_cap(symbol, lambda, order, tol, DEFAULT_PRODUCT_CAP)
}

/// Computes the infinite forward product `H = prod_j phi(lambda^j z)`.
///
/// Factors are multiplied (truncated to `order` coefficients, which is exact
/// for those coefficients) until the certified tail ratio drops below `tol`
/// relative to the current product norm, so the returned `tail_bound` is at
/// most `tol * ||h||_2`.
///
/// # Errors
///
/// * [`LabError::Config`] unless `|lambda| < 1` and `phi(0) = 1` (to 1e-12).
/// * [`LabError::NotConvergent`] when no `n <= cap` certifies the tolerance;
///   slowly attracting ratios like `|lambda| = 0.99` at `tol = 1e-10` need
///   more factors than the default cap and are reported rather than guessed.
pub fn infinite_product_limit_with_cap(
    symbol: &CoefficientFunction,
    lambda: Complex64,
    order: usize,
    tol: f64,
    cap: usize,
) -> Result<InfiniteProductLimit> {
    assert!(order >= 1, "order must be at least 1");
    assert!(tol.is_finite() && tol > 0.0, "tolerance must be positive");
    assert!(cap >= 1, "cap must be at least 1");
    let r = check_infinite_product_inputs(symbol, lambda)?;
    let c = deviation_norm(symbol);

    let mut product = CoefficientFunction::constant(Complex64::ONE).resized(order);
    let mut pow = Complex64::ONE;
    for n in 1..=cap {
        product = product.truncated_mul(&symbol.dilate(pow), order);
        pow *= lambda;
        let ratio = tail_ratio(c, r, n);
        if ratio <= tol {
            let norm = product.h2_norm();
            return Ok(InfiniteProductLimit {
                h: product,
                n_used: n,
                tail_bound: norm * ratio,
                bound_description: format!(
                    "||H - P_n||_2 <= ||P_n||_2 * expm1(C r^n / ((1-r) sqrt(1-r^2))) \
                     with C = ||phi - 1||_2 = {c:.6e}, r = |lambda| = {r:.6}, n = {n}"
                ),
            });
        }
    }
    Err(LabError::NotConvergent(format!(
        "tail ratio {:.3e} still above tolerance {tol:.3e} after {cap} factors \
         (C = {c:.3e}, |lambda| = {r:.6})",
        tail_ratio(c, r, cap),
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn phi0() -> CoefficientFunction {
        CoefficientFunction::from_real(&[0.9, 0.5]).unwrap()
    }

    #[test]
    fn four_factor_rotation_product_collapses_to_two_monomials() {
        // prod_{j=0}^{3} (0.9 + 0.5 i^j z) = 0.6561 - 0.0625 z^4: the middle
        // coefficients cancel in conjugate pairs.
        let p = phi_product_coefficients(&phi0(), c(0.0, 1.0), 4, 5);
        let expected = [0.6561, 0.0, 0.0, 0.0, -0.0625];
        for (k, want) in expected.iter().enumerate() {
            assert!(
                (p.coeff(k) - c(*want, 0.0)).norm() <= 1e-14,
                "coefficient {k}: got {}, want {want}",
                p.coeff(k)
            );
        }
    }

    #[test]
    fn log_scale_eval_matches_a_direct_factor_loop() {
        let phi = CoefficientFunction::new(vec![c(0.8, 0.1), c(0.3, -0.2), c(0.0, 0.05)]).unwrap();
        let lambda = Complex64::from_polar(0.7, 0.3);
        let z = c(0.4, -0.5);
        let n = 7;

        let mut direct = Complex64::ONE;
        let mut pow = Complex64::ONE;
        for _ in 0..n {
            direct *= phi.evaluate(pow * z);
            pow *= lambda;
        }

        let got = eval_product(ProductKind::Phi, &phi, lambda, n, z)
            .unwrap()
            .to_complex();
        assert!(
            (got - direct).norm() <= 1e-12 * direct.norm().max(1.0),
            "log-scale {got} vs direct {direct}"
        );
    }

    #[test]
    fn psi_is_the_conjugate_reflection_of_phi() {
        // With bar-coefficients and conjugate ratio, Psi_n(z) = conj(Phi_n(conj(z))).
        let phi = CoefficientFunction::new(vec![c(1.0, 0.0), c(0.2, 0.4), c(-0.1, 0.3)]).unwrap();
        let lambda = Complex64::from_polar(1.0, 2.0);
        let z = c(0.3, 0.55);
        let n = 23;

        let psi = eval_product(ProductKind::Psi, &phi, lambda, n, z)
            .unwrap()
            .to_complex();
        let phi_reflected = eval_product(ProductKind::Phi, &phi, lambda, n, z.conj())
            .unwrap()
            .to_complex()
            .conj();
        assert!((psi - phi_reflected).norm() <= 1e-12);
    }

    #[test]
    fn omega_equals_psi_at_the_shifted_point_on_the_circle() {
        // For |lambda| = 1 the ratio 1/conj(lambda) equals lambda, and
        // re-indexing the factors gives Omega_n(z) = Psi_n(omega^n z).
        let phi = phi0();
        let theta = TAU * 0.381_966_011_250_105; // irrational turn
        let lambda = Complex64::from_polar(1.0, theta);
        let z = c(0.4, -0.2);
        let n = 37;

        let seq_omega = ProductSequence::new(ProductKind::Omega, &phi, lambda).unwrap();
        let omega_ratio = seq_omega.ratio();
        let shifted = omega_ratio.powu(n as u32) * z;

        let omega = seq_omega.eval(n, z).unwrap();
        let psi = eval_product(ProductKind::Psi, &phi, lambda, n, shifted).unwrap();
        assert!((omega.log_abs() - psi.log_abs()).abs() <= 1e-10);
        let mut dphase = (omega.phase() - psi.phase()).rem_euclid(TAU);
        if dphase > TAU / 2.0 {
            dphase -= TAU;
        }
        assert!(dphase.abs() <= 1e-8, "phase difference {dphase}");
    }

    #[test]
    fn huge_products_stay_finite_in_log_scale() {
        // 1200 factors of the constant 2 overflow f64 as a plain product but
        // accumulate exactly in log scale.
        let phi = CoefficientFunction::from_real(&[2.0]).unwrap();
        let v = eval_product(ProductKind::Phi, &phi, Complex64::ONE, 1200, c(0.5, 0.0)).unwrap();
        let expected = 1200.0 * 2.0f64.ln();
        assert!((v.log_abs() - expected).abs() <= 1e-9 * expected);
        assert!(v.abs().is_infinite());
    }

    #[test]
    fn omega_arguments_escape_the_disk_for_contracting_lambda() {
        // ratio 1/conj(0.5) = 2, so the second factor already sits at |w| = 1.2.
        let err = eval_product(ProductKind::Omega, &phi0(), c(0.5, 0.0), 5, c(0.3, 0.0));
        assert!(matches!(err, Err(LabError::DomainEscape(_))), "{err:?}");
    }

    #[test]
    fn omega_at_the_origin_never_escapes() {
        let v = eval_product(ProductKind::Omega, &phi0(), c(0.5, 0.0), 50, Complex64::ZERO)
            .unwrap()
            .to_complex();
        // Every factor is phi~(0) = 0.9.
        assert!((v - c(0.9f64.powi(50), 0.0)).norm() <= 1e-12);
    }

    #[test]
    fn exact_zero_factors_absorb_the_product() {
        // phi(w) = w - 0.5 vanishes at the evaluation point itself (j = 0).
        let phi = CoefficientFunction::from_real(&[-0.5, 1.0]).unwrap();
        let v = eval_product(ProductKind::Phi, &phi, c(0.5, 0.0), 3, c(0.5, 0.0)).unwrap();
        assert!(v.is_zero());
        assert_eq!(v.to_complex(), Complex64::ZERO);
        assert_eq!(v.log_abs(), f64::NEG_INFINITY);
    }

    #[test]
    fn eval_many_snapshots_agree_with_single_shots() {
        let phi = phi0();
        let lambda = c(0.6, 0.3);
        let z = c(0.2, 0.1);
        let seq = ProductSequence::new(ProductKind::Psi, &phi, lambda).unwrap();
        let marks = [0usize, 1, 2, 5, 11];
        let many = seq.eval_many(&marks, z).unwrap();
        for (mark, snap) in marks.iter().zip(&many) {
            let single = seq.eval(*mark, z).unwrap();
            assert!((snap.to_complex() - single.to_complex()).norm() <= 1e-13);
        }
        assert!((many[0].to_complex() - Complex64::ONE).norm() == 0.0);
    }

    #[test]
    fn constant_one_symbol_converges_immediately() {
        let one = CoefficientFunction::from_real(&[1.0]).unwrap();
        let lim = infinite_product_limit(&one, c(0.5, 0.0), 8, 1e-12).unwrap();
        assert_eq!(lim.n_used, 1);
        assert_eq!(lim.tail_bound, 0.0);
        assert!((lim.h.coeff(0) - Complex64::ONE).norm() == 0.0);
        assert!(lim.h.coeffs()[1..].iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn infinite_product_limit_matches_a_long_direct_product() {
        // H(z) = prod_{j>=0} (1 + 0.5^j z) evaluated at z = 0.3.
        let phi = CoefficientFunction::from_real(&[1.0, 1.0]).unwrap();
        let lambda = c(0.5, 0.0);
        let lim = infinite_product_limit(&phi, lambda, 64, 1e-12).unwrap();
        assert!((lim.h.coeff(0) - Complex64::ONE).norm() <= 1e-14);

        let mut direct = 1.0f64;
        for j in 0..200 {
            direct *= 1.0 + 0.5f64.powi(j) * 0.3;
        }
        let got = lim.h.evaluate(c(0.3, 0.0)).re;
        assert!(
            (got - direct).abs() <= 1e-10,
            "limit eval {got} vs direct {direct}"
        );
        assert!(lim.tail_bound <= 1e-12 * lim.h.h2_norm() + 1e-300);
        assert!(lim.bound_description.contains("expm1"));
    }

    #[test]
    fn tail_bound_dominates_the_real_gap_between_truncations() {
        let phi = CoefficientFunction::from_real(&[1.0, 1.0]).unwrap();
        let lambda = c(0.5, 0.0);
        let order = 64;
        let n = 4;

        let p4 = phi_product_coefficients(&phi, lambda, n, order);
        let p8 = phi_product_coefficients(&phi, lambda, 2 * n, order);
        let gap = p8.sub(&p4).h2_norm();
        let bound = tail_bound_after(&phi, lambda, n, order).unwrap();
        assert!(gap <= bound, "gap {gap} exceeds certified bound {bound}");

        // Frozen magnitudes for this configuration: ||P_4||_2 = 2.4014766
        // and a tail ratio of expm1(0.0625 / (0.5 sqrt(0.75))).
        assert!((p4.h2_norm() - 2.401_476_6).abs() <= 1e-6);
        let ratio = (0.0625f64 / (0.5 * 0.75f64.sqrt())).exp_m1();
        assert!((bound - p4.h2_norm() * ratio).abs() <= 1e-12);

        // The certificate tightens monotonically.
        let later = tail_bound_after(&phi, lambda, 8, order).unwrap();
        assert!(later < bound);
    }

    #[test]
    fn slow_ratios_report_non_convergence_instead_of_guessing() {
        let phi = CoefficientFunction::from_real(&[1.0, 1.0]).unwrap();
        let err = infinite_product_limit(&phi, c(0.99, 0.0), 32, 1e-10);
        assert!(matches!(err, Err(LabError::NotConvergent(_))), "{err:?}");
    }

    #[test]
    fn infinite_product_rejects_bad_inputs() {
        let phi = CoefficientFunction::from_real(&[1.0, 1.0]).unwrap();
        assert!(matches!(
            infinite_product_limit(&phi, c(1.0, 0.0), 8, 1e-8),
            Err(LabError::Config(_))
        ));
        let off_origin = CoefficientFunction::from_real(&[0.9, 0.5]).unwrap();
        assert!(matches!(
            infinite_product_limit(&off_origin, c(0.5, 0.0), 8, 1e-8),
            Err(LabError::Config(_))
        ));
        assert!(matches!(
            ProductSequence::new(ProductKind::Omega, &phi, Complex64::ZERO),
            Err(LabError::Config(_))
        ));
    }

    #[test]
    fn unimodular_powering_does_not_drift_over_long_schedules() {
        // After n factors of the constant-one symbol the product is exactly 1;
        // any modulus drift in the ratio powers would show up in log_abs.
        let one = CoefficientFunction::from_real(&[1.0]).unwrap();
        let lambda = Complex64::from_polar(1.0, TAU * 0.618_033_988_749_894_9);
        let seq = ProductSequence::new(ProductKind::Phi, &one, lambda).unwrap();
        let v = seq.eval(100_000, c(0.9, 0.0)).unwrap();
        assert_eq!(v.log_abs(), 0.0);
    }
}
