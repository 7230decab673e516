//! Dynamics classification for eigenoperators of the backward shift.
//!
//! Given a dilation scalar and a symbol, [`classify_dynamics`] walks a ladder
//! of decision rules ordered from the strongest (exact structural facts that
//! prove a verdict outright) to the weakest (long-horizon numerical probes
//! that only gather evidence).  Every verdict records which rule fired, the
//! numerical evidence behind it, and whether it is proven or merely
//! supported, so downstream consumers never mistake a probe for a theorem.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::families::golden_rotation_turns;
use crate::geometry::{
    circle_intersection_test, count_zeros, modulus_extrema, power_bound_probe, witness_search,
    CircleVerdict, GridSpec, ModulusExtrema, PowerBoundProbe, Schedule, WitnessKind,
    WitnessReport, WitnessThresholds,
};
use crate::hardy::CoefficientFunction;
use crate::products::phi_product_coefficients;

/// How the dilation scalar was specified.
///
/// Arithmetic facts (rationality of the rotation number) cannot be read off
/// a floating-point value, so inputs that carry them are kept symbolic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LambdaInput {
    /// A plain complex number; its rotation nature is detected numerically.
    Numeric(Complex64),
    /// Exactly `exp(2 pi i num / den)`.
    RationalRotation {
        /// Numerator of the rotation number in turns.
        num: i64,
        /// Denominator of the rotation number in turns (nonzero).
        den: u64,
    },
    /// `exp(2 pi i turns)` with the rotation nature detected numerically.
    AngleTurns(f64),
    /// `exp(2 pi i turns)` with the caller asserting `turns` is irrational.
    AssertedIrrationalTurns(f64),
    /// The inverse golden ratio rotation, `turns = (sqrt 5 - 1) / 2`.
    GoldenRotation,
}

impl LambdaInput {
    /// The dilation scalar as a complex number.
    pub fn value(&self) -> Complex64 {
        match *self {
            LambdaInput::Numeric(v) => v,
            LambdaInput::RationalRotation { num, den } => {
                Complex64::from_polar(1.0, std::f64::consts::TAU * num as f64 / den as f64)
            }
            LambdaInput::AngleTurns(t) | LambdaInput::AssertedIrrationalTurns(t) => {
                Complex64::from_polar(1.0, std::f64::consts::TAU * t)
            }
            LambdaInput::GoldenRotation => {
                Complex64::from_polar(1.0, std::f64::consts::TAU * golden_rotation_turns())
            }
        }
    }
}

/// Position of the dilation scalar relative to the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RotationKind {
    /// Exactly zero.
    Zero,
    /// Strictly inside the unit circle.
    InsideDisk,
    /// On the unit circle with `lambda^q = 1`; the payload is the minimal q.
    RootOfUnity(u32),
    /// On the unit circle with no detected period.
    IrrationalRotation,
    /// Strictly outside the unit circle.
    OutsideDisk,
}

/// Classified dilation scalar.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RotationClass {
    /// Where the scalar sits.
    pub kind: RotationKind,
    /// Its complex value.
    pub lambda: Complex64,
    /// Whether the kind is exact (carried by the input form) rather than
    /// detected within tolerance.
    pub exact: bool,
    /// Tolerance used for on-circle and periodicity detection.
    pub tol: f64,
}

/// Greatest common divisor.
fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Classifies the dilation scalar.
///
/// Numeric inputs are tested for unimodularity within `tol`, and on-circle
/// values are scanned for periods `q <= q_max`: the rotation number `t` (in
/// turns) is declared q-periodic when `q t` is within `tol / 2 pi` of an
/// integer, which matches `|lambda^q - 1| <= tol` to first order.  Inputs
/// that carry their arithmetic form (`RationalRotation`,
/// `AssertedIrrationalTurns`, `GoldenRotation`) classify exactly.
///
/// # Errors
///
/// Returns [`LabError::Config`] for non-finite scalars, a zero denominator,
/// or a non-finite turns value.
pub fn classify_rotation(input: &LambdaInput, q_max: u32, tol: f64) -> Result<RotationClass> {
    assert!(tol > 0.0 && tol < 1e-3, "rotation tolerance out of range");
    assert!(q_max >= 1, "q_max must be at least 1");
    let lambda = input.value();
    if !(lambda.re.is_finite() && lambda.im.is_finite()) {
        return Err(LabError::Config("lambda must be finite".into()));
    }

    match *input {
        LambdaInput::RationalRotation { num, den } => {
            if den == 0 {
                return Err(LabError::Config("rotation denominator must be nonzero".into()));
            }
            let q = den / gcd(num.unsigned_abs() % den.max(1), den);
            let q = u32::try_from(q).map_err(|_| {
                LabError::Config(format!("rotation period {q} exceeds the supported range"))
            })?;
            Ok(RotationClass {
                kind: RotationKind::RootOfUnity(q),
                lambda,
                exact: true,
                tol,
            })
        }
        LambdaInput::AssertedIrrationalTurns(t) => {
            if !t.is_finite() {
                return Err(LabError::Config("turns value must be finite".into()));
            }
            Ok(RotationClass {
                kind: RotationKind::IrrationalRotation,
                lambda,
                exact: true,
                tol,
            })
        }
        LambdaInput::GoldenRotation => Ok(RotationClass {
            kind: RotationKind::IrrationalRotation,
            lambda,
            exact: true,
            tol,
        }),
        LambdaInput::AngleTurns(t) => {
            if !t.is_finite() {
                return Err(LabError::Config("turns value must be finite".into()));
            }
            Ok(scan_rotation_number(t, lambda, q_max, tol))
        }
        LambdaInput::Numeric(_) => {
            let r = lambda.norm();
            if r == 0.0 {
                return Ok(RotationClass {
                    kind: RotationKind::Zero,
                    lambda,
                    exact: true,
                    tol,
                });
            }
            if r < 1.0 - tol {
                return Ok(RotationClass {
                    kind: RotationKind::InsideDisk,
                    lambda,
                    exact: false,
                    tol,
                });
            }
            if r > 1.0 + tol {
                return Ok(RotationClass {
                    kind: RotationKind::OutsideDisk,
                    lambda,
                    exact: false,
                    tol,
                });
            }
            let t = (lambda.arg() / std::f64::consts::TAU).rem_euclid(1.0);
            Ok(scan_rotation_number(t, lambda, q_max, tol))
        }
    }
}

/// Scans a rotation number (in turns) for small periods.
fn scan_rotation_number(t: f64, lambda: Complex64, q_max: u32, tol: f64) -> RotationClass {
    let threshold = tol / std::f64::consts::TAU;
    for q in 1..=q_max {
        let x = (f64::from(q) * t).rem_euclid(1.0);
        if x.min(1.0 - x) <= threshold {
            return RotationClass {
                kind: RotationKind::RootOfUnity(q),
                lambda,
                exact: false,
                tol,
            };
        }
    }
    RotationClass {
        kind: RotationKind::IrrationalRotation,
        lambda,
        exact: false,
        tol,
    }
}

/// Symbol together with exactness hints the coefficients cannot carry.
#[derive(Clone, Debug)]
pub struct SymbolInput {
    /// Coefficient representation of the symbol.
    pub function: CoefficientFunction,
    /// Whether the origin value is exactly of modulus one by construction
    /// (true for the built-in unit-origin family, false for raw numbers).
    pub origin_exact_unit: bool,
}

impl SymbolInput {
    /// Wraps raw coefficients with no exactness claims.
    pub fn plain(function: CoefficientFunction) -> Self {
        SymbolInput {
            function,
            origin_exact_unit: false,
        }
    }
}

/// Dynamical verdicts the ladder can reach.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dynamics {
    /// Some vector has a dense orbit.
    Hypercyclic,
    /// No vector has a dense orbit.
    NotHypercyclic,
    /// Projective orbits are dense but true orbits never are.
    SupercyclicNotHypercyclic,
    /// Projective density holds; plain density was not established.
    Supercyclic,
    /// Not even projective orbits are dense.
    NotSupercyclic,
    /// No bounded operator realizes the commutation identity at all.
    NoEigenoperatorExists,
    /// No rule fired.
    Undetermined,
}

/// Strength of a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Grade {
    /// Follows from a theorem given certified numerical facts.
    ProvenByTheorem,
    /// Supported by long-horizon probes that could in principle mislead.
    NumericalEvidence,
    /// Nothing fired.
    Undetermined,
}

/// Tunable parameters of the classification ladder.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct ClassifyConfig {
    /// Matrix truncation order used by operator-level consumers.
    pub truncation: usize,
    /// Largest rotation period scanned for.
    pub q_max: u32,
    /// Unimodularity / periodicity tolerance on the dilation scalar.
    pub rotation_tol: f64,
    /// Safety margin separating certified bounds from the unit circle.
    pub margin: f64,
    /// Modulus below which the symbol's origin value counts as zero.
    pub zero_tol: f64,
    /// Rings of the extrema grid (full closed disk).
    pub extrema_radial: usize,
    /// Angles of the extrema grid.
    pub extrema_angular: usize,
    /// Rings of the witness grid.
    pub witness_radial: usize,
    /// Angles of the witness grid.
    pub witness_angular: usize,
    /// Outer radius of the witness grid (strictly inside the disk).
    pub witness_outer: f64,
    /// Rings of the power-probe grid.
    pub probe_radial: usize,
    /// Angles of the power-probe grid.
    pub probe_angular: usize,
    /// Longest product length walked by witness searches.
    pub schedule_cap: usize,
    /// Number of powers traced by the power probe.
    pub probe_n_max: usize,
    /// Samples per winding contour.
    pub contour_samples: usize,
    /// Trajectory-conclusion thresholds.
    pub thresholds: WitnessThresholds,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            truncation: 256,
            q_max: 10_000,
            rotation_tol: 1e-9,
            margin: 1e-6,
            zero_tol: 1e-12,
            extrema_radial: 32,
            extrema_angular: 128,
            witness_radial: 12,
            witness_angular: 36,
            witness_outer: 0.95,
            probe_radial: 8,
            probe_angular: 64,
            schedule_cap: 100_000,
            probe_n_max: 256,
            contour_samples: 4096,
            thresholds: WitnessThresholds::default(),
        }
    }
}

impl ClassifyConfig {
    /// Validates every parameter range.
    ///
    /// # Errors
    ///
    /// Returns [`LabError::Config`] on the first violated range.
    pub fn validate(&self) -> Result<()> {
        if self.truncation < 8 {
            return Err(LabError::Config("truncation must be at least 8".into()));
        }
        if self.q_max < 1 {
            return Err(LabError::Config("q_max must be at least 1".into()));
        }
        if !(self.rotation_tol > 0.0 && self.rotation_tol < 1e-3) {
            return Err(LabError::Config("rotation_tol must lie in (0, 1e-3)".into()));
        }
        if !(self.margin > 0.0 && self.margin < 0.1) {
            return Err(LabError::Config("margin must lie in (0, 0.1)".into()));
        }
        if !(self.zero_tol >= 0.0 && self.zero_tol < 1e-3) {
            return Err(LabError::Config("zero_tol must lie in [0, 1e-3)".into()));
        }
        if self.schedule_cap < 32 {
            return Err(LabError::Config("schedule_cap must be at least 32".into()));
        }
        if self.probe_n_max < 8 {
            return Err(LabError::Config("probe_n_max must be at least 8".into()));
        }
        if self.contour_samples < 64 {
            return Err(LabError::Config("contour_samples must be at least 64".into()));
        }
        self.extrema_grid()?;
        self.witness_grid()?;
        self.probe_grid()?;
        self.thresholds.validate()
    }

    /// Grid for certified modulus extrema (full closed disk).
    pub fn extrema_grid(&self) -> Result<GridSpec> {
        GridSpec::new(self.extrema_radial, self.extrema_angular, 1.0)
    }

    /// Grid for witness searches (strictly interior).
    pub fn witness_grid(&self) -> Result<GridSpec> {
        GridSpec::new(self.witness_radial, self.witness_angular, self.witness_outer)
    }

    /// Grid for the power probe (full closed disk).
    pub fn probe_grid(&self) -> Result<GridSpec> {
        GridSpec::new(self.probe_radial, self.probe_angular, 1.0)
    }
}

/// A certified uniform bound on the orbit norms of the operator.
#[derive(Clone, Debug, Serialize)]
pub struct CertifiedOrbitBound {
    /// `sup_n ||T^n||` is at most this.
    pub bound: f64,
    /// The inequality chain that certifies it.
    pub mechanism: String,
}

/// Numerical evidence accumulated while the ladder ran.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Evidence {
    /// `|phi(0)|`.
    pub origin_modulus: f64,
    /// Certified modulus extrema of the decision symbol (the symbol itself,
    /// or the q-step product on the root-of-unity branch).
    pub extrema: Option<ModulusExtrema>,
    /// Circle verdict for those extrema.
    pub circle_verdict: Option<CircleVerdict>,
    /// Winding count of symbol zeros strictly inside the unit circle.
    pub zero_count: Option<u32>,
    /// Whether zeros sit close enough to the circle to make interior counts
    /// fragile.
    pub zeros_near_circle: bool,
    /// Witness searches performed (forward decay, backward floor).
    pub witness_reports: Vec<WitnessReport>,
    /// Power-probe trace, when the ladder reached it.
    pub power_probe: Option<PowerBoundProbe>,
    /// Certified orbit bound, when one exists.
    pub certified_orbit_bound: Option<CertifiedOrbitBound>,
    /// Free-form remarks about skipped or degraded steps.
    pub notes: Vec<String>,
}

/// Complete classification outcome.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    /// The dilation scalar.
    pub lambda: Complex64,
    /// Its rotation classification.
    pub rotation: RotationClass,
    /// The dynamical verdict.
    pub dynamics: Dynamics,
    /// How strongly the verdict is supported.
    pub grade: Grade,
    /// The decision rule that fired, in words.
    pub rule: String,
    /// Everything measured along the way.
    pub evidence: Evidence,
    /// The configuration that produced this verdict.
    pub config: ClassifyConfig,
}

/// Certified orbit bound for a q-th root of unity whose q-step product stays
/// strictly inside the disk.
fn root_of_unity_orbit_bound(symbol: &CoefficientFunction, q: u32) -> CertifiedOrbitBound {
    let s = symbol.coeff_sum_at_radius(1.0);
    let bound = s.powi(q as i32 - 1).max(1.0);
    CertifiedOrbitBound {
        bound,
        mechanism: format!(
            "||T^(mq+r)|| <= sup|P_q|^m * S^r with sup|P_q| < 1 certified, \
             S = sum |c_k| = {s:.12}, q = {q}; hence sup_n ||T^n|| <= max(1, S^(q-1))"
        ),
    }
}

/// Certified orbit bound for `|lambda| < 1`, when one exists.
///
/// `||T^n|| <= prod_{j<n} f_j` with `f_j = sum_k |c_k| rho^(jk)` by von
/// Neumann's inequality on each dilated factor; the `f_j` decrease to
/// `|c_0|`, so the supremum over `n` is finite exactly when `|c_0| <= 1` and
/// is reached (or tail-bounded) after finitely many factors.
fn contraction_orbit_bound(symbol: &CoefficientFunction, rho: f64) -> Option<CertifiedOrbitBound> {
    let c0 = symbol.coeff(0).norm();
    if c0 > 1.0 {
        return None;
    }
    let tail: f64 = symbol.coeffs()[1..].iter().map(|c| c.norm()).sum();
    let mut sup = 1.0f64;
    let mut partial = 1.0f64;
    let mut rj = 1.0f64;
    for _ in 0..200_000 {
        let f = symbol.coeff_sum_at_radius(rj);
        if f <= 1.0 {
            return Some(CertifiedOrbitBound {
                bound: sup,
                mechanism: format!(
                    "||T^n|| <= prod_j sum_k |c_k| rho^(jk) (von Neumann per factor), \
                     rho = {rho:.12}; factors fall to or below 1, certified sup = {sup:.12}"
                ),
            });
        }
        if f - 1.0 <= 1e-16 {
            let bound = sup.max(partial * (tail * rj / (1.0 - rho)).exp());
            return Some(CertifiedOrbitBound {
                bound,
                mechanism: format!(
                    "||T^n|| <= prod_j sum_k |c_k| rho^(jk), rho = {rho:.12}; remaining \
                     factors bounded by exp(sum_k |c_k| rho^j / (1 - rho)), certified sup = \
                     {bound:.12}"
                ),
            });
        }
        partial *= f;
        sup = sup.max(partial);
        rj *= rho;
    }
    None
}

/// Whether a grid trace grows past the infinity threshold.
fn trace_grows(trace: &[f64], thresholds: &WitnessThresholds) -> bool {
    match (trace.first(), trace.last()) {
        (Some(first), Some(last)) => *last >= thresholds.tol_inf.ln() && last > first,
        _ => false,
    }
}

/// Classifies the dynamics of the eigenoperator built from `lambda` and the
/// symbol.
///
/// # Errors
///
/// Returns configuration errors for invalid inputs and propagates numerical
/// failures (contour zeros that survive every perturbation, domain escapes)
/// from the probes it runs.
pub fn classify_dynamics(
    lambda: &LambdaInput,
    symbol: &SymbolInput,
    config: &ClassifyConfig,
) -> Result<Verdict> {
    config.validate()?;
    let rotation = classify_rotation(lambda, config.q_max, config.rotation_tol)?;
    let phi = &symbol.function;
    let mut evidence = Evidence {
        origin_modulus: phi.coeff(0).norm(),
        ..Evidence::default()
    };

    let verdict = |dynamics, grade, rule: String, evidence| Verdict {
        lambda: rotation.lambda,
        rotation,
        dynamics,
        grade,
        rule,
        evidence,
        config: config.clone(),
    };

    match rotation.kind {
        RotationKind::Zero => Ok(verdict(
            Dynamics::NotHypercyclic,
            Grade::ProvenByTheorem,
            "zero dilation: the operator maps everything into the constants, so orbits \
             live on a single ray"
                .into(),
            evidence,
        )),
        RotationKind::OutsideDisk => Ok(verdict(
            Dynamics::NoEigenoperatorExists,
            Grade::ProvenByTheorem,
            "expansive dilation: the commutation identity forces matrix entries to grow \
             without bound, so no bounded operator exists"
                .into(),
            evidence,
        )),
        RotationKind::InsideDisk => {
            let rho = rotation.lambda.norm();
            evidence.certified_orbit_bound = contraction_orbit_bound(phi, rho);
            if evidence.origin_modulus <= config.zero_tol {
                Ok(verdict(
                    Dynamics::SupercyclicNotHypercyclic,
                    Grade::ProvenByTheorem,
                    "contractive dilation with symbol vanishing at the origin: projective \
                     orbits are dense but plain orbits never are"
                        .into(),
                    evidence,
                ))
            } else {
                Ok(verdict(
                    Dynamics::NotSupercyclic,
                    Grade::ProvenByTheorem,
                    "contractive dilation with non-vanishing origin value: orbit directions \
                     collapse onto the kernel ray, so not even projective density holds"
                        .into(),
                    evidence,
                ))
            }
        }
        RotationKind::RootOfUnity(q) => {
            classify_root_of_unity(q, &rotation, symbol, config, evidence)
        }
        RotationKind::IrrationalRotation => {
            classify_irrational(&rotation, symbol, config, evidence)
        }
    }
}

/// Root-of-unity branch: everything reduces to the q-step product.
fn classify_root_of_unity(
    q: u32,
    rotation: &RotationClass,
    symbol: &SymbolInput,
    config: &ClassifyConfig,
    mut evidence: Evidence,
) -> Result<Verdict> {
    let phi = &symbol.function;
    let degree = (q as usize).saturating_mul(phi.len() - 1);
    if degree > 20_000 {
        evidence.notes.push(format!(
            "the {q}-step product has degree {degree}, past the expansion budget; raise the \
             period tolerance or reduce the symbol order to decide this case"
        ));
        return Ok(Verdict {
            lambda: rotation.lambda,
            rotation: *rotation,
            dynamics: Dynamics::Undetermined,
            grade: Grade::Undetermined,
            rule: "root-of-unity product expansion exceeds the work budget".into(),
            evidence,
            config: config.clone(),
        });
    }
    let order = degree + 1;
    let pq = phi_product_coefficients(phi, rotation.lambda, q as usize, order);
    let grid = config.extrema_grid()?;
    let extrema = modulus_extrema(&pq, &grid);
    let circle = circle_intersection_test(&extrema, config.margin);
    evidence.extrema = Some(extrema);
    evidence.circle_verdict = Some(circle);
    evidence
        .notes
        .push(format!("extrema taken over the exact {q}-step product"));

    let exactness_grade = |proven_if_exact: bool| {
        if rotation.exact || !proven_if_exact {
            Grade::ProvenByTheorem
        } else {
            Grade::NumericalEvidence
        }
    };
    if !rotation.exact {
        evidence.notes.push(format!(
            "period q = {q} detected within tolerance {:.1e}, not carried exactly by the input",
            rotation.tol
        ));
    }

    let (dynamics, grade, rule) = match circle {
        CircleVerdict::InsideDisk => {
            evidence.certified_orbit_bound = Some(root_of_unity_orbit_bound(phi, q));
            (
                Dynamics::NotHypercyclic,
                Grade::ProvenByTheorem,
                format!(
                    "{q}-step product stays strictly inside the unit disk: the operator is \
                     power-bounded"
                ),
            )
        }
        CircleVerdict::OutsideDisk => (
            Dynamics::NotHypercyclic,
            Grade::ProvenByTheorem,
            format!(
                "{q}-step product stays strictly outside the unit circle: orbit norms grow \
                 without return"
            ),
        ),
        CircleVerdict::Intersects => (
            Dynamics::Hypercyclic,
            exactness_grade(true),
            format!(
                "{q}-step product image crosses the unit circle: witnessed moduli on both \
                 sides certify the crossing"
            ),
        ),
        CircleVerdict::Uncertain => (
            Dynamics::Undetermined,
            Grade::Undetermined,
            format!(
                "{q}-step product image hugs the unit circle within the margin; neither side \
                 can be certified"
            ),
        ),
    };
    Ok(Verdict {
        lambda: rotation.lambda,
        rotation: *rotation,
        dynamics,
        grade,
        rule,
        evidence,
        config: config.clone(),
    })
}

/// Irrational-rotation branch: certified facts first, probes after.
fn classify_irrational(
    rotation: &RotationClass,
    symbol: &SymbolInput,
    config: &ClassifyConfig,
    mut evidence: Evidence,
) -> Result<Verdict> {
    let phi = &symbol.function;
    let lambda = rotation.lambda;
    let finish = |dynamics, grade, rule: String, evidence| {
        Ok(Verdict {
            lambda,
            rotation: *rotation,
            dynamics,
            grade,
            rule,
            evidence,
            config: config.clone(),
        })
    };
    let irrationality_grade = if rotation.exact {
        Grade::ProvenByTheorem
    } else {
        Grade::NumericalEvidence
    };
    if !rotation.exact {
        evidence.notes.push(
            "no period detected up to q_max; irrationality of the rotation is assumed, \
             not carried by the input"
                .into(),
        );
    }

    // Certified extrema of the symbol itself.
    let extrema = modulus_extrema(phi, &config.extrema_grid()?);
    let circle = circle_intersection_test(&extrema, config.margin);
    evidence.extrema = Some(extrema);
    evidence.circle_verdict = Some(circle);
    match circle {
        CircleVerdict::InsideDisk => {
            return finish(
                Dynamics::NotHypercyclic,
                Grade::ProvenByTheorem,
                "symbol image strictly inside the unit disk: every product factor contracts, \
                 so the operator is power-bounded"
                    .into(),
                evidence,
            );
        }
        CircleVerdict::OutsideDisk => {
            return finish(
                Dynamics::NotHypercyclic,
                Grade::ProvenByTheorem,
                "symbol image strictly outside the unit circle: every product factor expands, \
                 so orbit norms grow without return"
                    .into(),
                evidence,
            );
        }
        _ => {}
    }

    // Interior zero count (shared by the proof rule and the projective rule).
    let origin = evidence.origin_modulus;
    match count_zeros(phi, 1.0, config.contour_samples) {
        Ok(outer) => {
            evidence.zero_count = Some(outer);
            match count_zeros(phi, 0.995, config.contour_samples) {
                Ok(inner) => evidence.zeros_near_circle = outer > inner,
                Err(_) => evidence.zeros_near_circle = true,
            }
            if evidence.zeros_near_circle {
                evidence.notes.push(
                    "zeros detected within 0.005 of the unit circle; interior-zero rules \
                     remain sound but are sensitive to coefficient perturbations"
                        .into(),
                );
            }
        }
        Err(LabError::OnCircleZero(msg)) => {
            evidence.zeros_near_circle = true;
            evidence
                .notes
                .push(format!("zero counting skipped: {msg}"));
        }
        Err(other) => return Err(other),
    }

    // Proven hypercyclicity: unit-or-larger origin modulus plus an interior zero.
    let origin_qualifies = symbol.origin_exact_unit || origin >= 1.0 + config.margin;
    if origin_qualifies && evidence.zero_count.is_some_and(|n| n >= 1) {
        return finish(
            Dynamics::Hypercyclic,
            irrationality_grade,
            "irrational rotation, origin modulus at least one, and a certified interior \
             zero of the symbol"
                .into(),
            evidence,
        );
    }

    // Long-horizon witnesses (forward decay, backward floor).
    let witness_grid = config.witness_grid()?;
    let schedule = Schedule::standard(config.schedule_cap);
    let psi = witness_search(
        WitnessKind::PsiTendsToZero,
        phi,
        lambda,
        &witness_grid,
        &schedule,
        &config.thresholds,
    )?;
    let omega = witness_search(
        WitnessKind::OmegaBoundedBelow,
        phi,
        lambda,
        &witness_grid,
        &schedule,
        &config.thresholds,
    )?;
    let psi_collapses = psi.succeeded();
    let omega_floored = omega.succeeded();
    let omega_grows = trace_grows(&omega.grid_max_trace, &config.thresholds);
    let inv_psi_trace: Vec<f64> = psi.grid_min_trace.iter().map(|v| -v).collect();
    let inv_psi_grows = trace_grows(&inv_psi_trace, &config.thresholds);
    evidence.witness_reports.push(psi);
    evidence.witness_reports.push(omega);

    if psi_collapses && omega_floored {
        return finish(
            Dynamics::Hypercyclic,
            Grade::NumericalEvidence,
            "forward scalar products collapse to zero while backward products stay bounded \
             below (numerical witnesses on the sampled grid)"
                .into(),
            evidence,
        );
    }
    if omega_grows && origin < 1.0 {
        return finish(
            Dynamics::Hypercyclic,
            Grade::NumericalEvidence,
            "backward product maxima grow across the grid while the origin value is \
             contractive: forward orbits can chase dense targets"
                .into(),
            evidence,
        );
    }
    if inv_psi_grows && origin > 1.0 {
        return finish(
            Dynamics::Hypercyclic,
            Grade::NumericalEvidence,
            "reciprocal forward products grow across the grid while the origin value is \
             expansive: scalar transport reaches dense targets"
                .into(),
            evidence,
        );
    }

    // Power probe for stabilization (against hypercyclicity).
    let probe = power_bound_probe(phi, lambda, config.probe_n_max, &config.probe_grid()?)?;
    let peak_idx = probe
        .sup_log
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let peak = probe.sup_log[peak_idx];
    let last_sup = *probe.sup_log.last().unwrap_or(&f64::NEG_INFINITY);
    let sup_stabilizes = peak_idx + 1 <= probe.sup_log.len() / 2 && last_sup <= peak;
    // A grid-wide floor is only believable away from interior zeros: near a
    // zero, deep factor dips concentrate on a single circle the grid almost
    // surely misses, so the true infimum is not floored even when every
    // sampled trajectory is.
    let inf_floor = evidence.zero_count == Some(0)
        && probe
            .inf_log
            .iter()
            .all(|v| *v >= config.thresholds.bounded_floor.ln());
    evidence.power_probe = Some(probe);
    if sup_stabilizes {
        return finish(
            Dynamics::NotHypercyclic,
            Grade::NumericalEvidence,
            "power probe: product envelopes peaked early and never recovered, orbits show \
             no unbounded growth"
                .into(),
            evidence,
        );
    }
    if inf_floor {
        return finish(
            Dynamics::NotHypercyclic,
            Grade::NumericalEvidence,
            "power probe: product moduli never approach zero anywhere on the grid, orbits \
             cannot visit small neighborhoods"
                .into(),
            evidence,
        );
    }

    // Projective density evidence: interior zero with contractive origin.
    if origin <= 1.0 - config.margin && evidence.zero_count.is_some_and(|n| n >= 1) {
        return finish(
            Dynamics::Supercyclic,
            Grade::NumericalEvidence,
            "interior zero with contractive origin value: projective orbits are supported, \
             plain density was not witnessed"
                .into(),
            evidence,
        );
    }

    finish(
        Dynamics::Undetermined,
        Grade::Undetermined,
        "no decision rule fired at the configured tolerances".into(),
        evidence,
    )
}

/// Outcome of running all four sufficient-condition witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct SufficientConditionReport {
    /// The dilation scalar probed.
    pub lambda: Complex64,
    /// Reports for every witness kind that could be evaluated.
    pub reports: Vec<WitnessReport>,
    /// Kinds whose objective was achieved.
    pub satisfied: Vec<WitnessKind>,
    /// Kinds that were skipped, with reasons.
    pub notes: Vec<String>,
}

/// Runs the four sufficient-condition witness searches for a symbol and a
/// dilation scalar.
///
/// Kinds whose products are undefined or escape the disk for this scalar are
/// skipped with a note instead of failing the whole report.
///
/// # Errors
///
/// Returns [`LabError::Config`] when the configuration is invalid.
pub fn sufficient_condition_report(
    symbol: &CoefficientFunction,
    lambda: Complex64,
    config: &ClassifyConfig,
) -> Result<SufficientConditionReport> {
    config.validate()?;
    let grid = config.witness_grid()?;
    let schedule = Schedule::standard(config.schedule_cap);
    let mut reports = Vec::new();
    let mut satisfied = Vec::new();
    let mut notes = Vec::new();
    for kind in [
        WitnessKind::PsiTendsToZero,
        WitnessKind::OmegaBoundedBelow,
        WitnessKind::OmegaTendsToInfinity,
        WitnessKind::InvPsiTendsToInfinity,
    ] {
        match witness_search(kind, symbol, lambda, &grid, &schedule, &config.thresholds) {
            Ok(report) => {
                if report.succeeded() {
                    satisfied.push(kind);
                }
                reports.push(report);
            }
            Err(err) => notes.push(format!("{kind:?} skipped: {err}")),
        }
    }
    Ok(SufficientConditionReport {
        lambda,
        reports,
        satisfied,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{phi0, phi1, psi_symbol};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Reduced-cost configuration for unit tests.
    fn test_config() -> ClassifyConfig {
        ClassifyConfig {
            extrema_radial: 16,
            extrema_angular: 64,
            witness_radial: 6,
            witness_angular: 12,
            witness_outer: 0.9,
            probe_radial: 6,
            probe_angular: 32,
            schedule_cap: 20_000,
            probe_n_max: 128,
            contour_samples: 1024,
            ..ClassifyConfig::default()
        }
    }

    #[test]
    fn rotation_classification_detects_small_periods() {
        let tol = 1e-9;
        let r = classify_rotation(&LambdaInput::Numeric(c(0.0, 1.0)), 10_000, tol).unwrap();
        assert_eq!(r.kind, RotationKind::RootOfUnity(4));
        assert!(!r.exact);

        let r = classify_rotation(&LambdaInput::RationalRotation { num: 3, den: 12 }, 100, tol)
            .unwrap();
        assert_eq!(r.kind, RotationKind::RootOfUnity(4));
        assert!(r.exact);

        let r = classify_rotation(&LambdaInput::Numeric(c(-1.0, 0.0)), 100, tol).unwrap();
        assert_eq!(r.kind, RotationKind::RootOfUnity(2));

        let r = classify_rotation(&LambdaInput::Numeric(c(0.3, 0.2)), 100, tol).unwrap();
        assert_eq!(r.kind, RotationKind::InsideDisk);

        let r = classify_rotation(&LambdaInput::Numeric(c(2.0, 0.0)), 100, tol).unwrap();
        assert_eq!(r.kind, RotationKind::OutsideDisk);

        let r = classify_rotation(&LambdaInput::Numeric(Complex64::ZERO), 100, tol).unwrap();
        assert_eq!(r.kind, RotationKind::Zero);
    }

    #[test]
    fn golden_rotation_has_no_small_period() {
        // Independent scan: the golden rotation number keeps q*t far from
        // integers for every q up to 10^4 (badly approximable), so even the
        // numeric path must classify it as irrational.
        let t = golden_rotation_turns();
        let mut min_dist = f64::INFINITY;
        for q in 1..=10_000u32 {
            let x = (f64::from(q) * t).rem_euclid(1.0);
            min_dist = min_dist.min(x.min(1.0 - x));
        }
        assert!(min_dist > 1e-9 / std::f64::consts::TAU * 10.0);

        let numeric = classify_rotation(
            &LambdaInput::AngleTurns(t),
            10_000,
            1e-9,
        )
        .unwrap();
        assert_eq!(numeric.kind, RotationKind::IrrationalRotation);
        assert!(!numeric.exact);

        let exact = classify_rotation(&LambdaInput::GoldenRotation, 10_000, 1e-9).unwrap();
        assert_eq!(exact.kind, RotationKind::IrrationalRotation);
        assert!(exact.exact);
    }

    #[test]
    fn zero_dilation_is_proven_not_hypercyclic() {
        let v = classify_dynamics(
            &LambdaInput::Numeric(Complex64::ZERO),
            &SymbolInput::plain(phi0()),
            &test_config(),
        )
        .unwrap();
        assert_eq!(v.dynamics, Dynamics::NotHypercyclic);
        assert_eq!(v.grade, Grade::ProvenByTheorem);
    }

    #[test]
    fn expansive_dilation_admits_no_operator() {
        let v = classify_dynamics(
            &LambdaInput::Numeric(c(0.0, 2.0)),
            &SymbolInput::plain(phi0()),
            &test_config(),
        )
        .unwrap();
        assert_eq!(v.dynamics, Dynamics::NoEigenoperatorExists);
        assert_eq!(v.grade, Grade::ProvenByTheorem);
    }

    #[test]
    fn contractive_dilation_splits_on_the_origin_value() {
        let cfg = test_config();
        let vanishing = CoefficientFunction::from_real(&[0.0, 1.0]).unwrap();
        let v = classify_dynamics(
            &LambdaInput::Numeric(c(0.5, 0.0)),
            &SymbolInput::plain(vanishing),
            &cfg,
        )
        .unwrap();
        assert_eq!(v.dynamics, Dynamics::SupercyclicNotHypercyclic);
        assert_eq!(v.grade, Grade::ProvenByTheorem);

        let v = classify_dynamics(
            &LambdaInput::Numeric(c(0.5, 0.0)),
            &SymbolInput::plain(phi0()),
            &cfg,
        )
        .unwrap();
        assert_eq!(v.dynamics, Dynamics::NotSupercyclic);
        assert_eq!(v.grade, Grade::ProvenByTheorem);
        // Certified orbit bound: factors 1.4, 1.15, 1.025 exceed 1, then
        // 0.9625 stops the product; sup = 1.4 * 1.15 * 1.025.
        let bound = v.evidence.certified_orbit_bound.as_ref().unwrap();
        assert!((bound.bound - 1.650_25).abs() <= 1e-9);
    }

    #[test]
    fn quarter_rotation_power_bounded_case_is_proven() {
        let v = classify_dynamics(
            &LambdaInput::RationalRotation { num: 1, den: 4 },
            &SymbolInput::plain(phi0()),
            &test_config(),
        )
        .unwrap();
        assert_eq!(v.rotation.kind, RotationKind::RootOfUnity(4));
        assert_eq!(v.dynamics, Dynamics::NotHypercyclic);
        assert_eq!(v.grade, Grade::ProvenByTheorem);
        assert_eq!(v.evidence.circle_verdict, Some(CircleVerdict::InsideDisk));
        // S = 1.4, q = 4: certified orbit bound 1.4^3 = 2.744.
        let bound = v.evidence.certified_orbit_bound.as_ref().unwrap();
        assert!((bound.bound - 2.744).abs() <= 1e-12);
    }

    #[test]
    fn quarter_rotation_crossing_case_is_hypercyclic() {
        let v = classify_dynamics(
            &LambdaInput::RationalRotation { num: 1, den: 4 },
            &SymbolInput::plain(phi1()),
            &test_config(),
        )
        .unwrap();
        assert_eq!(v.dynamics, Dynamics::Hypercyclic);
        assert_eq!(v.grade, Grade::ProvenByTheorem);
        assert_eq!(v.evidence.circle_verdict, Some(CircleVerdict::Intersects));
    }

    #[test]
    fn numeric_quarter_rotation_downgrades_the_crossing_to_evidence() {
        let v = classify_dynamics(
            &LambdaInput::Numeric(c(0.0, 1.0)),
            &SymbolInput::plain(phi1()),
            &test_config(),
        )
        .unwrap();
        assert_eq!(v.dynamics, Dynamics::Hypercyclic);
        assert_eq!(v.grade, Grade::NumericalEvidence);
    }

    #[test]
    fn root_of_unity_verdict_matches_the_collapsed_product() {
        // Classifying (lambda = i, phi) must agree with classifying
        // (lambda = 1, P_4) since every decision flows through P_q.
        let cfg = test_config();
        let direct = classify_dynamics(
            &LambdaInput::RationalRotation { num: 1, den: 4 },
            &SymbolInput::plain(phi0()),
            &cfg,
        )
        .unwrap();
        let base = phi0();
        let p4 = phi_product_coefficients(&base, c(0.0, 1.0), 4, 5);
        let collapsed = classify_dynamics(
            &LambdaInput::RationalRotation { num: 0, den: 1 },
            &SymbolInput::plain(p4),
            &cfg,
        )
        .unwrap();
        assert_eq!(direct.dynamics, collapsed.dynamics);
        assert_eq!(direct.grade, collapsed.grade);
    }

    #[test]
    fn golden_rotation_with_unit_origin_and_interior_zero_is_proven_hypercyclic() {
        let v = classify_dynamics(
            &LambdaInput::GoldenRotation,
            &SymbolInput {
                function: psi_symbol(0.5, 64).unwrap(),
                origin_exact_unit: true,
            },
            &test_config(),
        )
        .unwrap();
        assert_eq!(v.dynamics, Dynamics::Hypercyclic);
        assert_eq!(v.grade, Grade::ProvenByTheorem);
        assert_eq!(v.evidence.zero_count, Some(1));
    }

    #[test]
    fn golden_rotation_with_crossing_affine_symbol_stabilizes() {
        // phi0 crosses the circle, has no interior zero, and its products
        // decay everywhere (log-average log 0.9 < 0): the power probe fires.
        let v = classify_dynamics(
            &LambdaInput::GoldenRotation,
            &SymbolInput::plain(phi0()),
            &test_config(),
        )
        .unwrap();
        assert_eq!(v.dynamics, Dynamics::NotHypercyclic);
        assert_eq!(v.grade, Grade::NumericalEvidence);
        assert!(v.evidence.power_probe.is_some());
        assert_eq!(v.evidence.zero_count, Some(0));
    }

    #[test]
    fn inline_unit_origin_symbol_stays_undetermined() {
        // The same coefficients as the unit-origin family, but passed as raw
        // numbers: no exactness flag, origin modulus exactly 1 numerically,
        // and no probe can resolve the knife-edge.
        let v = classify_dynamics(
            &LambdaInput::GoldenRotation,
            &SymbolInput::plain(psi_symbol(0.5, 64).unwrap()),
            &test_config(),
        )
        .unwrap();
        assert_eq!(v.dynamics, Dynamics::Undetermined);
        assert_eq!(v.grade, Grade::Undetermined);
    }

    #[test]
    fn interior_zero_with_contractive_origin_yields_projective_evidence() {
        // phi = 1.03 z - 0.515: zero at 0.5, |phi(0)| = 0.515, and the
        // boundary log-average log 1.03 > 0 keeps the power probe growing,
        // so the ladder falls through to the projective rule.
        let phi = CoefficientFunction::from_real(&[-0.515, 1.03]).unwrap();
        let v = classify_dynamics(
            &LambdaInput::GoldenRotation,
            &SymbolInput::plain(phi),
            &test_config(),
        )
        .unwrap();
        assert_eq!(v.dynamics, Dynamics::Supercyclic);
        assert_eq!(v.grade, Grade::NumericalEvidence);
        assert_eq!(v.evidence.zero_count, Some(1));
    }

    #[test]
    fn strictly_inside_symbol_is_proven_power_bounded_for_any_rotation() {
        let small = CoefficientFunction::from_real(&[0.3, 0.2]).unwrap();
        let v = classify_dynamics(
            &LambdaInput::GoldenRotation,
            &SymbolInput::plain(small),
            &test_config(),
        )
        .unwrap();
        assert_eq!(v.dynamics, Dynamics::NotHypercyclic);
        assert_eq!(v.grade, Grade::ProvenByTheorem);
    }

    #[test]
    fn strictly_outside_symbol_is_proven_expansive() {
        let big = CoefficientFunction::from_real(&[3.0, 0.5]).unwrap();
        let v = classify_dynamics(
            &LambdaInput::GoldenRotation,
            &SymbolInput::plain(big),
            &test_config(),
        )
        .unwrap();
        assert_eq!(v.dynamics, Dynamics::NotHypercyclic);
        assert_eq!(v.grade, Grade::ProvenByTheorem);
    }

    #[test]
    fn verdict_serialization_is_deterministic() {
        let cfg = test_config();
        let run = || {
            let v = classify_dynamics(
                &LambdaInput::RationalRotation { num: 1, den: 4 },
                &SymbolInput::plain(phi1()),
                &cfg,
            )
            .unwrap();
            serde_json::to_string(&v).unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn sufficient_conditions_fire_for_constant_symbols() {
        let mut cfg = test_config();
        cfg.schedule_cap = 1000;

        // Doubling symbol: forward products grow, backward products grow.
        let two = CoefficientFunction::from_real(&[2.0]).unwrap();
        let report = sufficient_condition_report(&two, Complex64::ONE, &cfg).unwrap();
        assert_eq!(report.satisfied, vec![WitnessKind::OmegaTendsToInfinity]);
        assert!(report.notes.is_empty());

        // Halving symbol: forward products collapse, reciprocals grow.
        let half = CoefficientFunction::from_real(&[0.5]).unwrap();
        let report = sufficient_condition_report(&half, Complex64::ONE, &cfg).unwrap();
        assert_eq!(
            report.satisfied,
            vec![
                WitnessKind::PsiTendsToZero,
                WitnessKind::InvPsiTendsToInfinity
            ]
        );
        assert!(report.notes.is_empty());
    }

    #[test]
    fn config_validation_rejects_bad_ranges() {
        let mut cfg = ClassifyConfig::default();
        cfg.margin = 0.0;
        assert!(matches!(cfg.validate(), Err(LabError::Config(_))));
        let mut cfg = ClassifyConfig::default();
        cfg.witness_outer = 1.5;
        assert!(matches!(cfg.validate(), Err(LabError::Config(_))));
        let mut cfg = ClassifyConfig::default();
        cfg.thresholds.window = 0;
        assert!(matches!(cfg.validate(), Err(LabError::Config(_))));
    }
}
