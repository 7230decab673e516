//! Disk geometry: grids, winding numbers, certified modulus extrema, and
//! long-horizon witness searches over product trajectories.
//!
//! Everything here separates *witnessed* facts (a concrete point whose
//! evaluated modulus proves a one-sided bound) from *enveloped* facts (a grid
//! extremum widened by a Lipschitz cover term, valid for the whole disk).
//! Verdict-producing callers combine the two so that no claim rests on grid
//! resolution alone.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::hardy::CoefficientFunction;
use crate::products::{LogComplex, ProductKind, ProductSequence};

/// Contour samples whose modulus dips below this are treated as on-contour
/// zeros for winding purposes.
const ZERO_CONTOUR_TOL: f64 = 1e-10;

/// Hard ceiling on contour refinement before a winding count is abandoned.
const MAX_CONTOUR_SAMPLES: usize = 1 << 22;

/// Log values reported in place of an exactly-zero product factor, keeping
/// serialized trajectories numeric.
const LOG_CLAMP: f64 = 1e300;

const INV_GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Polar sampling grid over a closed disk.
///
/// The grid consists of the center plus `radial` rings of `angular` equally
/// spaced points each, the outermost ring sitting exactly on
/// `outer_radius`.
#[derive(Clone, Debug, Serialize)]
pub struct GridSpec {
    radial: usize,
    angular: usize,
    outer_radius: f64,
}

impl GridSpec {
    /// Builds a grid specification.
    ///
    /// # Errors
    ///
    /// Returns [`LabError::Config`] unless `radial >= 1`, `angular >= 4`, and
    /// `0 < outer_radius <= 1`.
    pub fn new(radial: usize, angular: usize, outer_radius: f64) -> Result<Self> {
        if radial < 1 || angular < 4 {
            return Err(LabError::Config(format!(
                "grid needs at least 1 ring and 4 angles, got ({radial}, {angular})"
            )));
        }
        if !(outer_radius > 0.0 && outer_radius <= 1.0) || !outer_radius.is_finite() {
            return Err(LabError::Config(format!(
                "grid outer radius must lie in (0, 1], got {outer_radius}"
            )));
        }
        Ok(GridSpec {
            radial,
            angular,
            outer_radius,
        })
    }

    /// 16 rings of 64 angles over the full closed disk.
    pub fn default_disk() -> Self {
        GridSpec {
            radial: 16,
            angular: 64,
            outer_radius: 1.0,
        }
    }

    /// Number of rings.
    pub fn radial(&self) -> usize {
        self.radial
    }

    /// Points per ring.
    pub fn angular(&self) -> usize {
        self.angular
    }

    /// Radius of the outermost ring.
    pub fn outer_radius(&self) -> f64 {
        self.outer_radius
    }

    /// All grid points: the center followed by rings from innermost out.
    pub fn points(&self) -> Vec<Complex64> {
        let mut pts = Vec::with_capacity(1 + self.radial * self.angular);
        pts.push(Complex64::ZERO);
        for i in 0..self.radial {
            let r = self.outer_radius * (i + 1) as f64 / self.radial as f64;
            for j in 0..self.angular {
                pts.push(Complex64::from_polar(r, TAU * j as f64 / self.angular as f64));
            }
        }
        pts
    }

    /// Points of the outermost ring only.
    pub fn boundary_points(&self) -> Vec<Complex64> {
        (0..self.angular)
            .map(|j| {
                Complex64::from_polar(self.outer_radius, TAU * j as f64 / self.angular as f64)
            })
            .collect()
    }

    /// Ring spacing.
    pub fn radial_step(&self) -> f64 {
        self.outer_radius / self.radial as f64
    }

    /// Angular spacing in radians.
    pub fn angular_step(&self) -> f64 {
        TAU / self.angular as f64
    }

    /// Distance within which every disk point has a grid neighbour.
    ///
    /// A point at radius `s` is within `radial_step / 2` of its nearest ring
    /// (or of the center) radially, and within an arc of `s * angular_step /
    /// 2` along that ring; the triangle inequality gives the stated cover.
    pub fn cover_radius(&self) -> f64 {
        0.5 * self.radial_step() + 0.5 * self.outer_radius * self.angular_step()
    }

    /// Arc cover of the boundary ring alone.
    pub fn boundary_cover(&self) -> f64 {
        0.5 * self.outer_radius * self.angular_step()
    }
}

/// Golden-section maximizer returning the best abscissa as well.
fn golden_argmax(f: impl Fn(f64) -> f64, a: f64, b: f64, iters: usize) -> (f64, f64) {
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
    if f1 >= f2 { (x1, f1) } else { (x2, f2) }
}

/// Counts zeros of a symbol inside `|z| < radius`, with multiplicity, by the
/// argument principle on the sampled contour.
///
/// If the modulus dips below 1e-10 at any contour sample the circle is
/// nudged inward by factors `1 - k/1000` (k = 1, 2, 3) and the count is
/// taken over the slightly smaller disk.  Sampling is doubled until the
/// phase increments are all below π/2 and the winding sum is within 0.25 of
/// an integer.
///
/// # Errors
///
/// Returns [`LabError::OnCircleZero`] when every perturbed contour still
/// passes through a near-zero of the symbol.
pub fn count_zeros(symbol: &CoefficientFunction, radius: f64, samples: usize) -> Result<u32> {
    assert!(
        radius > 0.0 && radius <= 1.0 && radius.is_finite(),
        "contour radius must lie in (0, 1]"
    );
    assert!(samples >= 64, "need at least 64 contour samples");

    'radius_attempt: for k in 0..=3u32 {
        let r = radius * (1.0 - f64::from(k) * 1e-3);
        let mut m = samples;
        while m <= MAX_CONTOUR_SAMPLES {
            let vals: Vec<Complex64> = (0..m)
                .map(|j| symbol.evaluate(Complex64::from_polar(r, TAU * j as f64 / m as f64)))
                .collect();
            if vals.iter().any(|v| v.norm() < ZERO_CONTOUR_TOL) {
                continue 'radius_attempt;
            }
            let mut winding = 0.0f64;
            let mut max_step = 0.0f64;
            for j in 0..m {
                let step = (vals[(j + 1) % m] / vals[j]).arg();
                max_step = max_step.max(step.abs());
                winding += step;
            }
            let turns = winding / TAU;
            if max_step <= PI / 2.0 && (turns - turns.round()).abs() <= 0.25 {
                let n = turns.round();
                if n >= 0.0 {
                    return Ok(n as u32);
                }
                // A negative count is numerical nonsense for a polynomial;
                // treat this contour as unreliable.
                continue 'radius_attempt;
            }
            m *= 2;
        }
    }
    Err(LabError::OnCircleZero(format!(
        "symbol modulus dips below {ZERO_CONTOUR_TOL:.0e} on the contour at radius {radius} \
         and on every inward perturbation"
    )))
}

/// Two-sided, certificate-carrying bounds on `|symbol|` over a closed disk.
///
/// `sup_lower <= sup |symbol| <= sup_envelope` and
/// `inf_envelope <= inf |symbol| <= inf_upper`; the witnessed sides come
/// from evaluated points, the envelopes from grid extrema widened by the
/// Lipschitz cover term `L * cover`, `L` being the coefficient bound on the
/// derivative over the closed unit disk.
#[derive(Clone, Debug, Serialize)]
pub struct ModulusExtrema {
    /// Witnessed lower bound on the supremum.
    pub sup_lower: f64,
    /// Point achieving `sup_lower`.
    pub sup_witness: Complex64,
    /// Certified upper bound on the supremum.
    pub sup_envelope: f64,
    /// Witnessed upper bound on the infimum.
    pub inf_upper: f64,
    /// Point achieving `inf_upper`.
    pub inf_witness: Complex64,
    /// Certified lower bound on the infimum (clamped at zero).
    pub inf_envelope: f64,
    /// Lipschitz constant used by the envelopes.
    pub lipschitz: f64,
}

/// Computes certified modulus extrema of a symbol over the grid's disk.
///
/// The supremum side exploits the maximum principle (it is attained on the
/// boundary circle), the infimum side scans the whole disk.  Golden-section
/// refinement sharpens the witnessed bounds; the envelopes come from the raw
/// grid plus the Lipschitz cover term and do not depend on the refinement.
pub fn modulus_extrema(symbol: &CoefficientFunction, grid: &GridSpec) -> ModulusExtrema {
    let lipschitz = symbol.derivative_coeff_bound();
    let rho = grid.outer_radius();
    let modulus = |z: Complex64| symbol.evaluate(z).norm();

    // Supremum over the boundary ring.
    let mut sup_grid = f64::NEG_INFINITY;
    let mut sup_angle = 0.0f64;
    for j in 0..grid.angular() {
        let theta = TAU * j as f64 / grid.angular() as f64;
        let v = modulus(Complex64::from_polar(rho, theta));
        if v > sup_grid {
            sup_grid = v;
            sup_angle = theta;
        }
    }
    let dtheta = grid.angular_step();
    let (best_theta, sup_refined) = golden_argmax(
        |t| modulus(Complex64::from_polar(rho, t)),
        sup_angle - dtheta,
        sup_angle + dtheta,
        60,
    );
    let sup_lower = sup_refined.max(sup_grid);
    let sup_witness = Complex64::from_polar(
        rho,
        if sup_refined >= sup_grid {
            best_theta
        } else {
            sup_angle
        },
    );

    // Infimum over the full disk.
    let mut inf_grid = f64::INFINITY;
    let mut inf_point = Complex64::ZERO;
    for z in grid.points() {
        let v = modulus(z);
        if v < inf_grid {
            inf_grid = v;
            inf_point = z;
        }
    }
    let (r0, t0) = (inf_point.norm(), inf_point.arg());
    let dr = grid.radial_step();
    let (best_t, neg_inf_theta) = golden_argmax(
        |t| -modulus(Complex64::from_polar(r0, t)),
        t0 - dtheta,
        t0 + dtheta,
        60,
    );
    let theta_stage = (-neg_inf_theta).min(inf_grid);
    let (best_r, neg_inf_final) = golden_argmax(
        |r| -modulus(Complex64::from_polar(r, best_t)),
        (r0 - dr).max(0.0),
        (r0 + dr).min(rho),
        60,
    );
    let radial_stage = -neg_inf_final;
    let (inf_upper, inf_witness) = if radial_stage <= theta_stage {
        (radial_stage, Complex64::from_polar(best_r, best_t))
    } else if theta_stage < inf_grid {
        (theta_stage, Complex64::from_polar(r0, best_t))
    } else {
        (inf_grid, inf_point)
    };

    ModulusExtrema {
        sup_lower,
        sup_witness,
        sup_envelope: sup_grid + lipschitz * grid.boundary_cover(),
        inf_upper,
        inf_witness,
        inf_envelope: (inf_grid - lipschitz * grid.cover_radius()).max(0.0),
        lipschitz,
    }
}

/// Relation between the image of the closed disk and the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CircleVerdict {
    /// Witnessed moduli on both sides of 1: the connected image meets the
    /// circle by the intermediate value theorem.
    Intersects,
    /// Certified envelope keeps the whole image strictly inside.
    InsideDisk,
    /// Certified envelope keeps the whole image strictly outside.
    OutsideDisk,
    /// Neither side could be certified at the requested margin.
    Uncertain,
}

/// Decides how the image of the closed disk under the symbol sits relative
/// to the unit circle, at a safety margin.
///
/// `margin` must be positive; it separates the witnessed / enveloped bounds
/// from 1 so that float evaluation error (orders of magnitude below any
/// sensible margin) cannot flip the verdict.
pub fn circle_intersection_test(extrema: &ModulusExtrema, margin: f64) -> CircleVerdict {
    assert!(margin > 0.0 && margin.is_finite(), "margin must be positive");
    if extrema.sup_lower >= 1.0 + margin && extrema.inf_upper <= 1.0 - margin {
        CircleVerdict::Intersects
    } else if extrema.sup_envelope <= 1.0 - margin {
        CircleVerdict::InsideDisk
    } else if extrema.inf_envelope >= 1.0 + margin {
        CircleVerdict::OutsideDisk
    } else {
        CircleVerdict::Uncertain
    }
}

/// One sampled point of a boundary image curve.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundarySample {
    /// Angle of the pre-image point on the circle of the sampled radius.
    pub theta: f64,
    /// Image value of the symbol at that point.
    pub value: Complex64,
}

/// Samples the image of the circle `|z| = radius` under the symbol.
pub fn boundary_curve(
    symbol: &CoefficientFunction,
    radius: f64,
    samples: usize,
) -> Vec<BoundarySample> {
    assert!(
        radius > 0.0 && radius <= 1.0 && radius.is_finite(),
        "radius must lie in (0, 1]"
    );
    assert!(samples >= 8, "need at least 8 samples");
    (0..samples)
        .map(|j| {
            let theta = TAU * j as f64 / samples as f64;
            BoundarySample {
                theta,
                value: symbol.evaluate(Complex64::from_polar(radius, theta)),
            }
        })
        .collect()
}

/// Log-scale envelope trace of the forward products over a disk grid.
#[derive(Clone, Debug, Serialize)]
pub struct PowerBoundProbe {
    /// Product lengths probed (1 through `n_max`).
    pub marks: Vec<usize>,
    /// Per mark: max of `log |P_n|` over the boundary ring (which bounds the
    /// disk supremum by the maximum principle, up to grid resolution).
    pub sup_log: Vec<f64>,
    /// Per mark: min of `log |P_n|` over the full grid.
    pub inf_log: Vec<f64>,
}

/// Traces boundary suprema and disk infima of `log |P_n|` for `n` up to
/// `n_max`, walking each grid point's running product incrementally.
///
/// # Errors
///
/// Propagates [`LabError::DomainEscape`] when `|lambda| > 1` pushes dilated
/// arguments out of the closed disk, and configuration errors from the
/// product construction.
pub fn power_bound_probe(
    symbol: &CoefficientFunction,
    lambda: Complex64,
    n_max: usize,
    grid: &GridSpec,
) -> Result<PowerBoundProbe> {
    assert!(n_max >= 1, "need at least one power");
    let seq = ProductSequence::new(ProductKind::Phi, symbol, lambda)?;
    let marks: Vec<usize> = (1..=n_max).collect();
    let points = grid.points();
    let boundary_from = points.len() - grid.angular();

    let mut sup_log = vec![f64::NEG_INFINITY; n_max];
    let mut inf_log = vec![f64::INFINITY; n_max];
    for (idx, z) in points.iter().enumerate() {
        let trace = seq.eval_many(&marks, *z)?;
        for (slot, v) in trace.iter().enumerate() {
            let lv = clamp_log(v.log_abs());
            if idx >= boundary_from {
                sup_log[slot] = sup_log[slot].max(lv);
            }
            inf_log[slot] = inf_log[slot].min(lv);
        }
    }
    Ok(PowerBoundProbe {
        marks,
        sup_log,
        inf_log,
    })
}

/// Replaces infinite logs (exact zeros) by a huge finite surrogate so that
/// serialized traces stay numeric.
fn clamp_log(v: f64) -> f64 {
    v.clamp(-LOG_CLAMP, LOG_CLAMP)
}

/// Increasing iteration schedule: every length up to 512, then geometric
/// marks growing by the factor 1.2, capped (the cap itself is included).
#[derive(Clone, Debug, Serialize)]
pub struct Schedule {
    marks: Vec<usize>,
}

impl Schedule {
    /// Builds the standard schedule up to `cap` iterations.
    pub fn standard(cap: usize) -> Self {
        assert!(cap >= 1, "schedule cap must be at least 1");
        let mut marks: Vec<usize> = (1..=cap.min(512)).collect();
        let mut n = 512usize;
        while n < cap {
            n = ((n as f64 * 1.2).ceil() as usize).max(n + 1).min(cap);
            marks.push(n);
        }
        Schedule { marks }
    }

    /// The strictly increasing mark list.
    pub fn marks(&self) -> &[usize] {
        &self.marks
    }

    /// Largest mark.
    pub fn cap(&self) -> usize {
        *self.marks.last().expect("schedule is never empty")
    }
}

/// Decision thresholds for trajectory conclusions.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct WitnessThresholds {
    /// A final modulus at or below this (with decreasing trend) concludes
    /// decay to zero.
    pub tol_zero: f64,
    /// A final modulus at or above this (with increasing trend) concludes
    /// growth to infinity.
    pub tol_inf: f64,
    /// Number of trailing marks averaged when checking the trend.
    pub window: usize,
    /// A trajectory whose every modulus stays at or above this concludes
    /// bounded-below.
    pub bounded_floor: f64,
}

impl Default for WitnessThresholds {
    fn default() -> Self {
        WitnessThresholds {
            tol_zero: 1e-40,
            tol_inf: 1e40,
            window: 8,
            bounded_floor: 1e-12,
        }
    }
}

impl WitnessThresholds {
    /// Validates ordering and positivity of the thresholds.
    ///
    /// # Errors
    ///
    /// Returns [`LabError::Config`] when a threshold is non-positive, the
    /// zero/infinity tolerances are not separated, or the window is zero.
    pub fn validate(&self) -> Result<()> {
        if !(self.tol_zero > 0.0 && self.tol_inf.is_finite() && self.tol_zero < 1.0)
            || !(self.tol_inf > 1.0)
            || !(self.bounded_floor > 0.0)
            || self.window == 0
        {
            return Err(LabError::Config(
                "witness thresholds need 0 < tol_zero < 1 < tol_inf, bounded_floor > 0, \
                 window >= 1"
                    .into(),
            ));
        }
        Ok(())
    }
}

/// Which product trajectory a witness search walks, and toward what.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessKind {
    /// `|Psi_n(z)| -> 0`: the forward orbit of the kernel span collapses.
    PsiTendsToZero,
    /// `|Omega_n(z)|` stays above a positive floor: backward orbits stay
    /// controlled.
    OmegaBoundedBelow,
    /// `|Omega_n(z)| -> inf`: backward orbits decay to zero in norm.
    OmegaTendsToInfinity,
    /// `1 / |Psi_n(z)| -> inf`: reciprocal growth of the forward scalar.
    InvPsiTendsToInfinity,
}

impl WitnessKind {
    /// Underlying product walked by this kind.
    fn product_kind(self) -> ProductKind {
        match self {
            WitnessKind::PsiTendsToZero | WitnessKind::InvPsiTendsToInfinity => ProductKind::Psi,
            WitnessKind::OmegaBoundedBelow | WitnessKind::OmegaTendsToInfinity => {
                ProductKind::Omega
            }
        }
    }

    /// Sign applied to `log |product|` before classification (reciprocal
    /// kinds negate).
    fn sign(self) -> f64 {
        match self {
            WitnessKind::InvPsiTendsToInfinity => -1.0,
            _ => 1.0,
        }
    }

    /// Conclusion this kind is searching for.
    pub fn objective(self) -> TrajectoryConclusion {
        match self {
            WitnessKind::PsiTendsToZero => TrajectoryConclusion::TendsToZero,
            WitnessKind::OmegaBoundedBelow => TrajectoryConclusion::BoundedBelow,
            WitnessKind::OmegaTendsToInfinity | WitnessKind::InvPsiTendsToInfinity => {
                TrajectoryConclusion::TendsToInfinity
            }
        }
    }
}

/// What a single point's trajectory did over the schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TrajectoryConclusion {
    /// Fell below `tol_zero` with a decreasing trend (or hit an exact zero).
    TendsToZero,
    /// Rose above `tol_inf` with an increasing trend.
    TendsToInfinity,
    /// Never dipped below `bounded_floor`.
    BoundedBelow,
    /// None of the above fired.
    Inconclusive,
}

/// Outcome of a witness search over a grid.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    /// The kind searched for.
    pub kind: WitnessKind,
    /// Conclusion at the selected witness point.
    pub conclusion: TrajectoryConclusion,
    /// The selected point (best for the objective, or best effort when the
    /// objective failed everywhere).
    pub witness: Complex64,
    /// `sign * log |product|` at each schedule mark for the witness point;
    /// exact zeros are clamped to ±1e300 to keep the trace numeric.
    pub witness_trajectory: Vec<f64>,
    /// For a bounded-below conclusion: the witnessed floor (min modulus over
    /// the schedule).
    pub bound_constant: Option<f64>,
    /// Schedule marks the trajectories were sampled at.
    pub schedule: Vec<usize>,
    /// Thresholds in force.
    pub thresholds: WitnessThresholds,
    /// Per mark: max of the signed log over all grid points (growth
    /// diagnostic independent of the single witness).
    pub grid_max_trace: Vec<f64>,
    /// Per mark: min of the signed log over all grid points.
    pub grid_min_trace: Vec<f64>,
    /// Whether the witness trajectory hit an exactly-zero factor.
    pub exact_zero: bool,
}

impl WitnessReport {
    /// Whether the witness achieved the kind's objective.
    pub fn succeeded(&self) -> bool {
        self.conclusion == self.kind.objective()
    }
}

/// Classifies one signed-log trajectory against the thresholds.
fn classify_trajectory(
    values: &[f64],
    exact_zero: bool,
    sign: f64,
    thresholds: &WitnessThresholds,
) -> TrajectoryConclusion {
    if exact_zero {
        // An exact zero forces the product to zero (its reciprocal to
        // infinity) for every later mark.
        return if sign > 0.0 {
            TrajectoryConclusion::TendsToZero
        } else {
            TrajectoryConclusion::TendsToInfinity
        };
    }
    let m = values.len();
    let w = thresholds.window.min(m / 2).max(1);
    let last = values[m - 1];
    let tail_mean = values[m - w..].iter().sum::<f64>() / w as f64;
    let prev_mean = values[m - 2 * w..m - w].iter().sum::<f64>() / w as f64;
    if last >= thresholds.tol_inf.ln() && tail_mean > prev_mean {
        return TrajectoryConclusion::TendsToInfinity;
    }
    if last <= thresholds.tol_zero.ln() && tail_mean < prev_mean {
        return TrajectoryConclusion::TendsToZero;
    }
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    if min >= thresholds.bounded_floor.ln() {
        return TrajectoryConclusion::BoundedBelow;
    }
    TrajectoryConclusion::Inconclusive
}

/// Scans a grid for a point whose product trajectory realizes the kind's
/// objective, walking every point through the full schedule.
///
/// Selection among objective-meeting points: deepest final decay for
/// zero-seeking kinds, highest final growth for infinity-seeking kinds, and
/// the largest witnessed floor for the bounded-below kind.  When no point
/// meets the objective the best-scoring point is still reported with its
/// actual conclusion, so callers can inspect the near-miss.
///
/// # Errors
///
/// Propagates product construction and domain errors; the grid should sit
/// strictly inside the open disk when the trajectories feed kernel-based
/// arguments.
pub fn witness_search(
    kind: WitnessKind,
    symbol: &CoefficientFunction,
    lambda: Complex64,
    grid: &GridSpec,
    schedule: &Schedule,
    thresholds: &WitnessThresholds,
) -> Result<WitnessReport> {
    thresholds.validate()?;
    assert!(
        schedule.marks().len() >= 2,
        "witness schedule needs at least two marks"
    );
    let seq = ProductSequence::new(kind.product_kind(), symbol, lambda)?;
    let sign = kind.sign();
    let marks = schedule.marks();

    struct Candidate {
        point: Complex64,
        values: Vec<f64>,
        conclusion: TrajectoryConclusion,
        exact_zero: bool,
        score: f64,
        min_value: f64,
    }

    let mut grid_max_trace = vec![f64::NEG_INFINITY; marks.len()];
    let mut grid_min_trace = vec![f64::INFINITY; marks.len()];
    let mut best: Option<Candidate> = None;
    for z in grid.points() {
        let trace: Vec<LogComplex> = seq.eval_many(marks, z)?;
        let exact_zero = trace.iter().any(LogComplex::is_zero);
        let values: Vec<f64> = trace
            .iter()
            .map(|v| clamp_log(sign * v.log_abs()))
            .collect();
        for (slot, v) in values.iter().enumerate() {
            grid_max_trace[slot] = grid_max_trace[slot].max(*v);
            grid_min_trace[slot] = grid_min_trace[slot].min(*v);
        }
        let conclusion = classify_trajectory(&values, exact_zero, sign, thresholds);
        let min_value = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let score = match kind.objective() {
            TrajectoryConclusion::TendsToZero => -values[values.len() - 1],
            TrajectoryConclusion::TendsToInfinity => values[values.len() - 1],
            TrajectoryConclusion::BoundedBelow => min_value,
            TrajectoryConclusion::Inconclusive => 0.0,
        };
        let candidate = Candidate {
            point: z,
            values,
            conclusion,
            exact_zero,
            score,
            min_value,
        };
        best = Some(match best.take() {
            None => candidate,
            Some(cur) => {
                let cand_hit = candidate.conclusion == kind.objective();
                let cur_hit = cur.conclusion == kind.objective();
                if (cand_hit, candidate.score) > (cur_hit, cur.score) {
                    candidate
                } else {
                    cur
                }
            }
        });
    }
    let best = best.expect("grids are never empty");
    let bound_constant = if best.conclusion == TrajectoryConclusion::BoundedBelow {
        Some(best.min_value.exp())
    } else {
        None
    };
    Ok(WitnessReport {
        kind,
        conclusion: best.conclusion,
        witness: best.point,
        witness_trajectory: best.values,
        bound_constant,
        schedule: marks.to_vec(),
        thresholds: *thresholds,
        grid_max_trace,
        grid_min_trace,
        exact_zero: best.exact_zero,
    })
}
