//! Command-line front end for the Hardy-space dynamics laboratory.
//!
//! Five subcommands expose the library: `classify` (verdict JSON), `image`
//! (boundary-curve CSV), `products` (product trajectories or certified
//! infinite-product limits), `witness` (sufficient-condition searches), and
//! `orbit` (simulated orbit traces). Reports embed the effective
//! configuration so every output is reproducible from its own header, and
//! repeated runs with the same inputs are byte-identical.
//!
//! Exit codes: 0 for any successful run (including an `Undetermined`
//! verdict), 2 for malformed input or configuration, 3 for a numeric
//! failure inside the laboratory.

mod commands;
mod spec;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "hardy-lab",
    version,
    about = "Numerical laboratory for backward-shift commutant dynamics on the Hardy space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the dynamics of the operator built from lambda and phi.
    Classify(ClassifyArgs),
    /// Sample the boundary curve of the n-step product as CSV.
    Image(ImageArgs),
    /// Walk product trajectories, or compute a certified infinite product.
    Products(ProductsArgs),
    /// Search a grid for a sufficient-condition witness.
    Witness(WitnessArgs),
    /// Simulate a finite-truncation orbit and projective distances.
    Orbit(OrbitArgs),
}

/// Options shared by every subcommand.
#[derive(Args)]
struct CommonArgs {
    /// Multiplier lambda: complex literal, `a/b`, `rot:p/q`, `angle:t`,
    /// `irr:t`, or `golden`.
    #[arg(long)]
    lambda: Option<String>,

    /// Symbol phi: inline coefficients, `psi:p[:order]`, `phi0`, `phi1`,
    /// or `@file.json`.
    #[arg(long)]
    phi: Option<String>,

    /// JSON file with the same fields as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output path (written atomically); stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Matrix truncation order used by classifier probes.
    #[arg(long)]
    truncation: Option<usize>,
}

#[derive(Args)]
struct ImageArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Number of product steps (0 gives the constant 1).
    #[arg(long)]
    n: Option<usize>,

    /// Circle radius to sample, in (0, 1].
    #[arg(long)]
    radius: Option<f64>,

    /// Number of equally spaced samples (at least 8).
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args)]
struct ProductsArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Product kind for trajectory mode: `phi`, `psi`, or `omega`.
    #[arg(long)]
    kind: Option<String>,

    /// Evaluation point for trajectory mode (complex literal).
    #[arg(long)]
    z: Option<String>,

    /// Largest step count for trajectory mode.
    #[arg(long)]
    n_max: Option<usize>,

    /// Compute the certified infinite-product limit instead of a trajectory.
    #[arg(long)]
    limit: bool,

    /// Coefficient order for limit mode.
    #[arg(long)]
    order: Option<usize>,

    /// Certified tail tolerance for limit mode.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Witness kind: `psi-zero`, `omega-lower`, `omega-infinity`, or
    /// `inv-psi-infinity`.
    #[arg(long)]
    kind: Option<String>,

    /// Radial grid resolution.
    #[arg(long)]
    radial: Option<usize>,

    /// Angular grid resolution.
    #[arg(long)]
    angular: Option<usize>,

    /// Outer radius of the search grid, in (0, 1].
    #[arg(long)]
    outer: Option<f64>,

    /// Largest step count in the witness schedule.
    #[arg(long)]
    schedule_cap: Option<usize>,
}

#[derive(Args)]
struct OrbitArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Initial vector: same grammar as `--phi`, plus `kernel:a` for a
    /// truncated reproducing kernel.
    #[arg(long)]
    x0: Option<String>,

    /// Projective-distance target (repeatable); same grammar as `--x0`.
    #[arg(long = "target")]
    targets: Vec<String>,

    /// Number of iteration steps.
    #[arg(long)]
    steps: Option<usize>,

    /// Matrix truncation order.
    #[arg(long)]
    truncation: Option<usize>,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify(args) => commands::classify(args),
        Command::Image(args) => commands::image(args),
        Command::Products(args) => commands::products(args),
        Command::Witness(args) => commands::witness(args),
        Command::Orbit(args) => commands::orbit(args),
    };
    if let Err(err) = result {
        eprintln!("error: {}", err.message());
        std::process::exit(err.code());
    }
}
