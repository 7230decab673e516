//! A numerical laboratory for the dynamics of operators that commute with the
//! Hardy-space backward shift up to a scalar.
//!
//! The objects under study are operators `T = R_λ φ(B)` on the Hardy space of
//! the unit disk, where `B` is the backward shift, `φ(B)` ranges over its
//! commutant and `R_λ` is composition with `z ↦ λz`.  These are exactly the
//! bounded solutions of `B T = λ T B`.  The crate materializes them as
//! truncated coefficient-space matrices and provides:
//!
//! - [`hardy`]: coefficient vectors, inner products, dilations, kernels;
//! - [`operators`]: the matrix builders, structure checks and norm estimates;
//! - [`products`]: the dilation product sequences `Φ_n`, `Ψ_n`, `Ω_n` that
//!   drive every dynamical criterion, with overflow-safe evaluation and a
//!   certified infinite-product limit;
//! - [`geometry`]: winding-number zero counts, disk modulus extrema, the
//!   circle intersection test and long-horizon witness searches;
//! - [`classify`]: the decision ladder producing graded verdicts
//!   (proved / numerical evidence / undetermined) with machine-readable
//!   reports;
//! - [`orbit`]: orbit simulation, kernel-transport identities and
//!   supercyclicity probes;
//! - [`families`], [`input`]: named symbol families and the textual
//!   specification grammar shared by the CLI and the Python bindings.
//!
//! Everything is deterministic: no global state, no hidden randomness, and
//! repeated runs with the same configuration produce identical reports.

pub mod classify;
pub mod error;
pub mod families;
pub mod geometry;
pub mod hardy;
pub mod input;
pub mod operators;
pub mod orbit;
pub mod products;

pub use classify::{
    classify_dynamics, ClassifyConfig, Dynamics, Grade, LambdaInput, SymbolInput, Verdict,
};
pub use error::{LabError, Result};
pub use hardy::{CoefficientFunction, ReproducingKernel};
pub use input::{parse_complex, parse_lambda, parse_phi};
pub use operators::OperatorMatrix;
