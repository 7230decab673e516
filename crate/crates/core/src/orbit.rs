//! Orbit simulation and structural cross-checks.
//!
//! Everything here runs the actual truncated operator against predictions
//! made by the scalar product machinery: orbits are simulated with overflow
//! protection, kernel transport is checked against its closed form, the
//! density criterion's three requirements are traced at user-chosen anchor
//! points, and the contractive-case limit functional is computed along two
//! independent routes.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{LabError, Result};
use crate::hardy::{CoefficientFunction, ReproducingKernel};
use crate::operators::OperatorMatrix;
use crate::products::{
    eval_product, infinite_product_limit, ProductKind, ProductSequence,
};

/// Log values with magnitude above this are clamped so serialized traces
/// stay numeric; an exactly dead orbit reports this as its floor.
const ORBIT_LOG_CLAMP: f64 = 1e300;

/// Norm thresholds beyond which the simulated vector is renormalized.
const RENORM_HIGH: f64 = 1e140;
const RENORM_LOW: f64 = 1e-140;

/// A factor modulus below this makes the backward map numerically undefined.
const S_MAP_TOL: f64 = 1e-13;

/// Decay threshold for the criterion conclusions: a trajectory counts as
/// collapsed once its modulus falls below this.
pub const CRITERION_DECAY_TOL: f64 = 1e-8;

/// Simulated orbit of a vector under repeated application of an operator.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitTrace {
    /// `log ||T^n x0||` for `n = 0..=steps` (clamped at ±1e300; the low
    /// clamp means the orbit died exactly).
    pub log_norms: Vec<f64>,
    /// Steps at which the working vector was rescaled to avoid overflow or
    /// underflow; the logged norms already account for the rescaling.
    pub renorm_steps: Vec<usize>,
    /// Per target: the projective distance from `T^n x0` to the target ray
    /// at each step (`sqrt(1 - cos^2)`; a dead orbit reports 1).
    pub projective_distances: Vec<Vec<f64>>,
}

/// Projective distance between two coefficient vectors, scale-invariant in
/// both arguments; either vector being zero gives the maximal distance 1.
fn projective_distance(x: &CoefficientFunction, t: &CoefficientFunction) -> f64 {
    let nx = x.h2_norm();
    let nt = t.h2_norm();
    if nx == 0.0 || nt == 0.0 {
        return 1.0;
    }
    let cos2 = (x.h2_inner(t).norm() / (nx * nt)).min(1.0).powi(2);
    (1.0 - cos2).max(0.0).sqrt()
}

/// Simulates `steps` applications of the operator to `x0`, logging norms and
/// projective distances to each target.
///
/// The working vector is renormalized whenever its norm leaves
/// `[1e-140, 1e140]`, so the trace stays finite over horizons where the raw
/// norms would overflow; the logged norms include the accumulated scale.
pub fn simulate_orbit(
    operator: &OperatorMatrix,
    x0: &CoefficientFunction,
    steps: usize,
    targets: &[CoefficientFunction],
) -> OrbitTrace {
    let order = operator.dim();
    let mut x = x0.resized(order);
    let mut log_scale = 0.0f64;
    let mut log_norms = Vec::with_capacity(steps + 1);
    let mut renorm_steps = Vec::new();
    let mut projective_distances = vec![Vec::with_capacity(steps + 1); targets.len()];

    for n in 0..=steps {
        if n > 0 {
            x = operator.apply(&x);
        }
        let norm = x.h2_norm();
        let log_norm = if norm == 0.0 {
            -ORBIT_LOG_CLAMP
        } else {
            (log_scale + norm.ln()).clamp(-ORBIT_LOG_CLAMP, ORBIT_LOG_CLAMP)
        };
        log_norms.push(log_norm);
        for (slot, target) in targets.iter().enumerate() {
            projective_distances[slot].push(projective_distance(&x, target));
        }
        if norm != 0.0 && !(RENORM_LOW..=RENORM_HIGH).contains(&norm) {
            log_scale += norm.ln();
            x = x.scale(Complex64::new(norm.recip(), 0.0));
            renorm_steps.push(n);
        }
    }
    OrbitTrace {
        log_norms,
        renorm_steps,
        projective_distances,
    }
}

/// Checks the kernel transport law: applying the operator `n` times to a
/// kernel vector must land on the predicted scalar multiple of the kernel at
/// the rotated anchor.  Returns the relative H² error between the simulated
/// and predicted vectors.
///
/// # Errors
///
/// Returns [`LabError::InvalidCoefficients`] for an anchor outside the open
/// disk and propagates operator construction and product evaluation errors.
pub fn kernel_transport_check(
    phi: &CoefficientFunction,
    lambda: Complex64,
    z0: Complex64,
    n: usize,
    order: usize,
) -> Result<f64> {
    assert!(order >= 1, "order must be at least 1");
    let operator = OperatorMatrix::build_eigenoperator(lambda, phi, order)?;
    let start = ReproducingKernel::new(z0)?;
    let mut x = start.materialize(order);
    for _ in 0..n {
        x = operator.apply(&x);
    }

    // T^n k_a = conj(Psi_n(a)) k_{alpha^n a} with alpha the conjugate of the
    // dilation scalar.
    let alpha = lambda.conj();
    let endpoint = alpha.powu(u32::try_from(n).expect("step count fits in u32")) * z0;
    let scalar = eval_product(ProductKind::Psi, phi, lambda, n, z0)?;
    let predicted = ReproducingKernel::new(endpoint)?
        .materialize(order)
        .scale(scalar.to_complex().conj());

    let denom = predicted.h2_norm();
    if denom == 0.0 {
        // The predicted vector vanishes only when the product hit an exact
        // zero; then the simulated orbit must vanish too.
        return Ok(x.h2_norm());
    }
    Ok(x.sub(&predicted).h2_norm() / denom)
}

/// Anchor points and schedule for [`criterion_check`].
#[derive(Clone, Debug, Serialize)]
pub struct CriterionWitness {
    /// Anchors whose forward scalars should collapse (spanning the dense
    /// forward set).
    pub x0_anchors: Vec<Complex64>,
    /// Anchors whose backward scalars should grow (spanning the dense
    /// backward set).
    pub y0_anchors: Vec<Complex64>,
    /// Strictly increasing product lengths to trace.
    pub schedule: Vec<usize>,
}

/// One anchor's traced values over the schedule.
#[derive(Clone, Debug, Serialize)]
pub struct AnchorTrace {
    /// The anchor point.
    pub anchor: Complex64,
    /// Traced values, one per schedule mark.
    pub values: Vec<f64>,
}

/// Outcome of tracing the density criterion's three requirements.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    /// Per forward anchor: `log |Psi_n|` (collapse means dense forward
    /// orbits of kernel combinations).
    pub forward_decay: Vec<AnchorTrace>,
    /// Per backward anchor: `-log |Omega_n|`, the log norm ratio of the
    /// n-step backward map applied to the kernel (collapse means the
    /// backward maps shrink their targets).
    pub backward_decay: Vec<AnchorTrace>,
    /// Per backward anchor: `|Psi_n(omega^n b) / Omega_n(b) - 1|`, computed
    /// along two independent product routes; exact arithmetic gives zero, so
    /// anything above rounding noise flags a product bug.
    pub roundtrip_residual: Vec<AnchorTrace>,
    /// Whether every forward anchor collapsed below the decay threshold.
    pub forward_ok: bool,
    /// Whether every backward anchor collapsed below the decay threshold.
    pub backward_ok: bool,
    /// Largest roundtrip residual seen anywhere.
    pub residual_max: f64,
    /// The schedule the traces were sampled at.
    pub schedule: Vec<usize>,
}

/// Traces the density criterion's requirements at the witness anchors.
///
/// The forward requirement asks the forward products to collapse at the
/// `x0` anchors, the backward requirement asks the backward products to grow
/// at the `y0` anchors, and the roundtrip requirement asks the composed
/// forward-after-backward scalar to stay at one.  The roundtrip is computed
/// along two independent routes (an incremental walk and per-mark fresh
/// evaluations at the rotated point), so it doubles as a self-check of the
/// product machinery.
///
/// # Errors
///
/// Returns [`LabError::Config`] for a non-unimodular dilation scalar, an
/// empty or non-increasing schedule, or anchors outside the open disk, and
/// [`LabError::SMapUndefined`] when a backward factor vanishes at an anchor
/// (the backward map does not exist there).
pub fn criterion_check(
    phi: &CoefficientFunction,
    lambda: Complex64,
    witness: &CriterionWitness,
) -> Result<CriterionReport> {
    if (lambda.norm() - 1.0).abs() > 1e-12 {
        return Err(LabError::Config(
            "criterion tracing requires a unimodular dilation scalar".into(),
        ));
    }
    if witness.schedule.is_empty() || witness.schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LabError::Config(
            "criterion schedule must be non-empty and strictly increasing".into(),
        ));
    }
    for a in witness.x0_anchors.iter().chain(witness.y0_anchors.iter()) {
        if a.norm() >= 1.0 {
            return Err(LabError::Config(format!(
                "criterion anchors must lie strictly inside the disk, got {a}"
            )));
        }
    }
    let marks = &witness.schedule;
    let cap = *marks.last().expect("schedule checked non-empty");
    let omega = lambda.conj().finv();
    let omega_turn = omega.arg();
    let bar = phi.bar_symbol();

    let mut forward_decay = Vec::with_capacity(witness.x0_anchors.len());
    let psi = ProductSequence::new(ProductKind::Psi, phi, lambda)?;
    for &a in &witness.x0_anchors {
        let trace = psi.eval_many(marks, a)?;
        forward_decay.push(AnchorTrace {
            anchor: a,
            values: trace
                .iter()
                .map(|v| v.log_abs().clamp(-ORBIT_LOG_CLAMP, ORBIT_LOG_CLAMP))
                .collect(),
        });
    }

    let mut backward_decay = Vec::with_capacity(witness.y0_anchors.len());
    let mut roundtrip_residual = Vec::with_capacity(witness.y0_anchors.len());
    let mut residual_max = 0.0f64;
    let omega_seq = ProductSequence::new(ProductKind::Omega, phi, lambda)?;
    for &b in &witness.y0_anchors {
        // The backward map divides by each factor, so a (near-)zero factor
        // anywhere along the walk makes it undefined at this anchor.
        for j in 1..=cap {
            let w = Complex64::from_polar(1.0, (omega_turn * j as f64).rem_euclid(std::f64::consts::TAU)) * b;
            if bar.evaluate(w).norm() < S_MAP_TOL {
                return Err(LabError::SMapUndefined(format!(
                    "backward factor vanishes at step {j} for anchor {b}"
                )));
            }
        }
        let omega_trace = omega_seq.eval_many(marks, b)?;
        backward_decay.push(AnchorTrace {
            anchor: b,
            values: omega_trace
                .iter()
                .map(|v| (-v.log_abs()).clamp(-ORBIT_LOG_CLAMP, ORBIT_LOG_CLAMP))
                .collect(),
        });

        let mut residuals = Vec::with_capacity(marks.len());
        for (slot, &n) in marks.iter().enumerate() {
            // Route A: the incremental backward walk up to n factors.
            let via_omega = &omega_trace[slot];
            // Route B: a fresh forward walk of the same n factors, read off
            // at the rotated anchor.  In exact arithmetic Psi_n(omega^n b)
            // equals Omega_n(b) factor for factor.
            let rotated = Complex64::from_polar(
                1.0,
                (omega_turn * n as f64).rem_euclid(std::f64::consts::TAU),
            ) * b;
            let via_psi = eval_product(ProductKind::Psi, phi, lambda, n, rotated)?;
            let dlog = via_omega.log_abs() - via_psi.log_abs();
            let dphase = (via_omega.phase() - via_psi.phase())
                .rem_euclid(std::f64::consts::TAU);
            let ratio = Complex64::from_polar(dlog.exp(), dphase);
            let residual = (ratio - Complex64::ONE).norm();
            residual_max = residual_max.max(residual);
            residuals.push(residual);
        }
        roundtrip_residual.push(AnchorTrace {
            anchor: b,
            values: residuals,
        });
    }

    let collapsed = |trace: &AnchorTrace| {
        trace
            .values
            .last()
            .is_some_and(|last| *last <= CRITERION_DECAY_TOL.ln())
    };
    let forward_ok = !forward_decay.is_empty() && forward_decay.iter().all(collapsed);
    let backward_ok = !backward_decay.is_empty() && backward_decay.iter().all(collapsed);

    Ok(CriterionReport {
        forward_decay,
        backward_decay,
        roundtrip_residual,
        forward_ok,
        backward_ok,
        residual_max,
        schedule: marks.clone(),
    })
}

/// Orbit trace augmented with step-to-step norm ratios.
#[derive(Clone, Debug, Serialize)]
pub struct SupercyclicityProbe {
    /// The underlying orbit trace, with the constant direction as target.
    pub trace: OrbitTrace,
    /// `||T^(n+1) x0|| / ||T^n x0||` per step; zero once the orbit dies.
    pub ratio_trace: Vec<f64>,
}

/// Simulates an orbit and reports its norm ratios and its projective
/// distance to the constant direction.
///
/// For contractive dilations the ratios expose the geometric collapse rate,
/// and the projective distances show whether orbit directions converge (the
/// obstruction to projective density) or keep moving.
///
/// # Errors
///
/// Propagates operator construction errors.
pub fn supercyclicity_probe(
    phi: &CoefficientFunction,
    lambda: Complex64,
    x0: &CoefficientFunction,
    steps: usize,
    order: usize,
) -> Result<SupercyclicityProbe> {
    let operator = OperatorMatrix::build_eigenoperator(lambda, phi, order)?;
    let constant = CoefficientFunction::constant(Complex64::ONE);
    let trace = simulate_orbit(&operator, x0, steps, &[constant]);
    let ratio_trace = trace
        .log_norms
        .windows(2)
        .map(|w| {
            if w[1] <= -ORBIT_LOG_CLAMP {
                0.0
            } else {
                (w[1] - w[0]).exp()
            }
        })
        .collect();
    Ok(SupercyclicityProbe { trace, ratio_trace })
}

/// The limit functional computed along two routes, with its certified tail.
#[derive(Clone, Debug, Serialize)]
pub struct LimitFunctionalReport {
    /// Steps at which the functional was sampled (1 through `n_max`).
    pub marks: Vec<usize>,
    /// `(T^n f)(0)` read off the simulated orbit.
    pub matrix_values: Vec<Complex64>,
    /// The same values computed as inner products against the forward
    /// product functions.
    pub product_values: Vec<Complex64>,
    /// The predicted limit: the inner product of `f` against the certified
    /// infinite product function.
    pub predicted_limit: Complex64,
    /// Certified bound on the distance between the predicted limit and the
    /// true one (tail bound times the norm of `f`).
    pub limit_tail_bound: f64,
    /// Largest disagreement between the two routes.
    pub route_disagreement: f64,
    /// `|matrix value at n_max - predicted limit|`.
    pub final_error: f64,
}

/// Computes `(T^n f)(0)` along two independent routes and compares with the
/// predicted limit for a contractive dilation.
///
/// The matrix route applies the truncated operator repeatedly and reads the
/// constant coefficient; the product route pairs `f` against the
/// incrementally built forward product functions.  Both must agree to
/// rounding, and both must approach the certified limit.
///
/// # Errors
///
/// Returns [`LabError::Config`] unless the dilation scalar is strictly
/// contractive and the symbol has origin value 1 (the regime where the
/// infinite product converges), and propagates certification failures.
pub fn limit_functional_check(
    phi: &CoefficientFunction,
    lambda: Complex64,
    f: &CoefficientFunction,
    n_max: usize,
    order: usize,
) -> Result<LimitFunctionalReport> {
    assert!(n_max >= 1, "need at least one step");
    assert!(order >= 1, "order must be at least 1");
    if lambda.norm() >= 1.0 {
        return Err(LabError::Config(
            "the limit functional exists only for contractive dilation scalars".into(),
        ));
    }
    if (phi.coeff(0) - Complex64::ONE).norm() > 1e-12 {
        return Err(LabError::Config(
            "the limit functional requires origin value 1".into(),
        ));
    }

    let operator = OperatorMatrix::build_eigenoperator(lambda, phi, order)?;
    let bar = phi.bar_symbol();
    let alpha = lambda.conj();

    let marks: Vec<usize> = (1..=n_max).collect();
    let mut matrix_values = Vec::with_capacity(n_max);
    let mut product_values = Vec::with_capacity(n_max);
    let mut x = f.resized(order);
    let mut psi_n = CoefficientFunction::constant(Complex64::ONE);
    let mut alpha_pow = Complex64::ONE;
    let mut route_disagreement = 0.0f64;
    for _ in &marks {
        x = operator.apply(&x);
        matrix_values.push(x.coeff(0));

        psi_n = psi_n.truncated_mul(&bar.dilate(alpha_pow), order);
        alpha_pow *= alpha;
        let paired = f.h2_inner(&psi_n);
        product_values.push(paired);

        let last = matrix_values.len() - 1;
        route_disagreement =
            route_disagreement.max((matrix_values[last] - product_values[last]).norm());
    }

    let limit = infinite_product_limit(&bar, alpha, order, 1e-12)?;
    let predicted_limit = f.h2_inner(&limit.h);
    let limit_tail_bound = limit.tail_bound * f.h2_norm();
    let final_error = (matrix_values[n_max - 1] - predicted_limit).norm();

    Ok(LimitFunctionalReport {
        marks,
        matrix_values,
        product_values,
        predicted_limit,
        limit_tail_bound,
        route_disagreement,
        final_error,
    })
}
