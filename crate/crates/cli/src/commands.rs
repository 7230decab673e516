//! The five subcommand implementations.
//!
//! Each command resolves its effective configuration (flags over config
//! file over defaults), runs the corresponding laboratory routine, and
//! renders a report: JSON for verdicts and witness reports, CSV with `#`
//! config-echo comment lines for curves and traces.

use std::fmt::Write as _;

use hardy_lab::classify::classify_dynamics;
use hardy_lab::geometry::{boundary_curve, witness_search, GridSpec, Schedule, WitnessKind};
use hardy_lab::hardy::{CoefficientFunction, ReproducingKernel};
use hardy_lab::operators::OperatorMatrix;
use hardy_lab::orbit::simulate_orbit;
use hardy_lab::products::{
    infinite_product_limit, phi_product_coefficients, ProductKind, ProductSequence,
};
use hardy_lab::{parse_complex, parse_lambda, parse_phi};

use crate::spec::{deliver, pick, require, CliError, Echo, FileConfig};
use crate::{ClassifyArgs, ImageArgs, OrbitArgs, ProductsArgs, WitnessArgs};

/// Largest product order `image` will expand to.
const MAX_IMAGE_ORDER: usize = 65_536;
/// Largest trajectory length `products` will walk.
const MAX_TRAJECTORY: usize = 1_000_000;
/// Largest step count `orbit` will simulate.
const MAX_ORBIT_STEPS: usize = 1_000_000;
/// Largest matrix truncation `orbit` will build.
const MAX_ORBIT_TRUNCATION: usize = 8_192;

pub fn classify(args: ClassifyArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.common.config.as_ref())?;
    let lambda_text = require(args.common.lambda, file.lambda.clone(), "lambda")?;
    let phi_text = require(args.common.phi, file.phi.clone(), "phi")?;
    let lambda = parse_lambda(&lambda_text)?;
    let phi = parse_phi(&phi_text)?;

    let mut config = file.classify.clone().unwrap_or_default();
    if let Some(truncation) = args.truncation.or(file.truncation) {
        config.truncation = truncation;
    }
    let verdict = classify_dynamics(&lambda, &phi, &config)?;

    let mut echo = Echo::new("classify");
    echo.push("lambda", &lambda_text);
    echo.push("phi", &phi_text);
    let report = serde_json::json!({
        "input": echo.json_object(),
        "verdict": verdict,
    });
    deliver(args.common.out.as_deref(), &format!("{report:#}\n"))
}

pub fn image(args: ImageArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.common.config.as_ref())?;
    let lambda_text = require(args.common.lambda, file.lambda.clone(), "lambda")?;
    let phi_text = require(args.common.phi, file.phi.clone(), "phi")?;
    let lambda = parse_lambda(&lambda_text)?.value();
    let phi = parse_phi(&phi_text)?.function;

    let n = pick(args.n, file.n, 4);
    let radius = pick(args.radius, file.radius, 1.0);
    let samples = pick(args.samples, file.samples, 4096);
    if !(radius > 0.0 && radius <= 1.0) {
        return Err(CliError::Config("radius must lie in (0, 1]".into()));
    }
    if samples < 8 {
        return Err(CliError::Config("need at least 8 samples".into()));
    }
    let order = n
        .saturating_mul(phi.len().saturating_sub(1))
        .saturating_add(1);
    if order > MAX_IMAGE_ORDER {
        return Err(CliError::Config(format!(
            "product degree {} is too large; lower --n",
            order - 1
        )));
    }

    let product = phi_product_coefficients(&phi, lambda, n, order);
    let curve = boundary_curve(&product, radius, samples);

    let mut echo = Echo::new("image");
    echo.push("lambda", &lambda_text);
    echo.push("phi", &phi_text);
    echo.push("n", n);
    echo.push("radius", radius);
    echo.push("samples", samples);

    let mut text = echo.csv_header();
    text.push_str("theta,re,im,modulus,circle_re,circle_im\n");
    for sample in &curve {
        let _ = writeln!(
            text,
            "{},{},{},{},{},{}",
            sample.theta,
            sample.value.re,
            sample.value.im,
            sample.value.norm(),
            sample.theta.cos(),
            sample.theta.sin()
        );
    }
    deliver(args.common.out.as_deref(), &text)
}

pub fn products(args: ProductsArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.common.config.as_ref())?;
    let lambda_text = require(args.common.lambda, file.lambda.clone(), "lambda")?;
    let phi_text = require(args.common.phi, file.phi.clone(), "phi")?;
    let lambda = parse_lambda(&lambda_text)?.value();
    let phi = parse_phi(&phi_text)?.function;

    let limit_mode = args.limit || file.limit.unwrap_or(false);
    if limit_mode {
        let order = pick(args.order, file.order, 64);
        let tol = pick(args.tol, file.tol, 1e-12);
        let limit = infinite_product_limit(&phi, lambda, order, tol)?;

        let mut echo = Echo::new("products");
        echo.push("mode", "limit");
        echo.push("lambda", &lambda_text);
        echo.push("phi", &phi_text);
        echo.push("order", order);
        echo.push("tol", tol);
        echo.push("n_used", limit.n_used);
        echo.push("tail_bound", limit.tail_bound);
        echo.push("bound", &limit.bound_description);

        let mut text = echo.csv_header();
        text.push_str("k,re,im\n");
        for (k, coeff) in limit.h.coeffs().iter().enumerate() {
            let _ = writeln!(text, "{k},{},{}", coeff.re, coeff.im);
        }
        return deliver(args.common.out.as_deref(), &text);
    }

    let kind_text = pick(args.kind, file.kind.clone(), "phi".into());
    let kind = parse_product_kind(&kind_text)?;
    let z_text = pick(args.z, file.z.clone(), "0".into());
    let z = parse_complex(&z_text)?;
    let n_max = pick(args.n_max, file.n_max, 64);
    if n_max == 0 || n_max > MAX_TRAJECTORY {
        return Err(CliError::Config(format!(
            "n_max must lie in 1..={MAX_TRAJECTORY}"
        )));
    }

    let sequence = ProductSequence::new(kind, &phi, lambda)?;
    let marks: Vec<usize> = (1..=n_max).collect();
    let values = sequence.eval_many(&marks, z)?;

    let mut echo = Echo::new("products");
    echo.push("mode", "trajectory");
    echo.push("lambda", &lambda_text);
    echo.push("phi", &phi_text);
    echo.push("kind", &kind_text);
    echo.push("z", &z_text);
    echo.push("n_max", n_max);

    let mut text = echo.csv_header();
    text.push_str("n,log_abs,phase,re,im\n");
    for (n, value) in marks.iter().zip(values.iter()) {
        let rect = value.to_complex();
        let _ = writeln!(
            text,
            "{n},{},{},{},{}",
            value.log_abs(),
            value.phase(),
            rect.re,
            rect.im
        );
    }
    deliver(args.common.out.as_deref(), &text)
}

pub fn witness(args: WitnessArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.common.config.as_ref())?;
    let lambda_text = require(args.common.lambda, file.lambda.clone(), "lambda")?;
    let phi_text = require(args.common.phi, file.phi.clone(), "phi")?;
    let kind_text = require(args.kind, file.kind.clone(), "kind")?;
    let lambda = parse_lambda(&lambda_text)?.value();
    let phi = parse_phi(&phi_text)?.function;
    let kind = parse_witness_kind(&kind_text)?;

    let radial = pick(args.radial, file.radial, 12);
    let angular = pick(args.angular, file.angular, 36);
    let outer = pick(args.outer, file.outer, 0.95);
    let cap = pick(args.schedule_cap, file.schedule_cap, 100_000);
    let grid = GridSpec::new(radial, angular, outer)?;
    let schedule = Schedule::standard(cap);
    let thresholds = file.thresholds.clone().unwrap_or_default();
    thresholds.validate()?;

    let report = witness_search(kind, &phi, lambda, &grid, &schedule, &thresholds)?;

    let mut echo = Echo::new("witness");
    echo.push("lambda", &lambda_text);
    echo.push("phi", &phi_text);
    echo.push("kind", &kind_text);
    echo.push("radial", radial);
    echo.push("angular", angular);
    echo.push("outer", outer);
    echo.push("schedule_cap", cap);
    let rendered = serde_json::json!({
        "input": echo.json_object(),
        "witness": report,
    });
    deliver(args.common.out.as_deref(), &format!("{rendered:#}\n"))
}

pub fn orbit(args: OrbitArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.common.config.as_ref())?;
    let lambda_text = require(args.common.lambda, file.lambda.clone(), "lambda")?;
    let phi_text = require(args.common.phi, file.phi.clone(), "phi")?;
    let lambda = parse_lambda(&lambda_text)?.value();
    let phi = parse_phi(&phi_text)?.function;

    let truncation = pick(args.truncation, file.truncation, 256);
    if !(8..=MAX_ORBIT_TRUNCATION).contains(&truncation) {
        return Err(CliError::Config(format!(
            "truncation must lie in 8..={MAX_ORBIT_TRUNCATION}"
        )));
    }
    let steps = pick(args.steps, file.steps, 1000);
    if steps == 0 || steps > MAX_ORBIT_STEPS {
        return Err(CliError::Config(format!(
            "steps must lie in 1..={MAX_ORBIT_STEPS}"
        )));
    }

    let x0_text = pick(args.x0, file.x0.clone(), "1".into());
    let x0 = parse_vector(&x0_text, truncation)?;
    let target_texts: Vec<String> = if args.targets.is_empty() {
        file.targets.clone().unwrap_or_default()
    } else {
        args.targets.clone()
    };
    let targets: Vec<CoefficientFunction> = target_texts
        .iter()
        .map(|text| parse_vector(text, truncation))
        .collect::<Result<_, _>>()?;

    let operator = OperatorMatrix::build_eigenoperator(lambda, &phi, truncation)?;
    let trace = simulate_orbit(&operator, &x0, steps, &targets);

    let mut echo = Echo::new("orbit");
    echo.push("lambda", &lambda_text);
    echo.push("phi", &phi_text);
    echo.push("x0", &x0_text);
    echo.push("targets", target_texts.join("; "));
    echo.push("steps", steps);
    echo.push("truncation", truncation);
    echo.push(
        "renorm_steps",
        trace
            .renorm_steps
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join("; "),
    );

    let mut text = echo.csv_header();
    text.push_str("step,log_norm");
    for idx in 1..=targets.len() {
        let _ = write!(text, ",dist_{idx}");
    }
    text.push('\n');
    for (step, log_norm) in trace.log_norms.iter().enumerate() {
        let _ = write!(text, "{step},{log_norm}");
        for per_target in &trace.projective_distances {
            let _ = write!(text, ",{}", per_target[step]);
        }
        text.push('\n');
    }
    deliver(args.common.out.as_deref(), &text)
}

/// Parses an orbit vector: the symbol grammar plus `kernel:a` for a
/// truncated reproducing kernel at anchor `a`.
fn parse_vector(text: &str, truncation: usize) -> Result<CoefficientFunction, CliError> {
    if let Some(anchor_text) = text.trim().strip_prefix("kernel:") {
        let anchor = parse_complex(anchor_text)?;
        let kernel = ReproducingKernel::new(anchor)?;
        return Ok(kernel.materialize(truncation));
    }
    Ok(parse_phi(text)?.function)
}

fn parse_product_kind(text: &str) -> Result<ProductKind, CliError> {
    match text.trim().to_ascii_lowercase().as_str() {
        "phi" => Ok(ProductKind::Phi),
        "psi" => Ok(ProductKind::Psi),
        "omega" => Ok(ProductKind::Omega),
        other => Err(CliError::Config(format!(
            "unknown product kind `{other}` (expected phi, psi, or omega)"
        ))),
    }
}

fn parse_witness_kind(text: &str) -> Result<WitnessKind, CliError> {
    match text.trim().to_ascii_lowercase().as_str() {
        "psi-zero" => Ok(WitnessKind::PsiTendsToZero),
        "omega-lower" => Ok(WitnessKind::OmegaBoundedBelow),
        "omega-infinity" => Ok(WitnessKind::OmegaTendsToInfinity),
        "inv-psi-infinity" => Ok(WitnessKind::InvPsiTendsToInfinity),
        other => Err(CliError::Config(format!(
            "unknown witness kind `{other}` (expected psi-zero, omega-lower, \
             omega-infinity, or inv-psi-infinity)"
        ))),
    }
}
