//! Python extension module exposing the laboratory's main operations.
//!
//! Symbols travel as plain lists of Python complex numbers and reports as
//! JSON strings, so the module needs no Python-side wrapper classes. Build
//! the importable shared object with
//! `cargo build -p hardy-lab-py --release --features extension-module` and
//! rename `libhardy_lab_py.so` to `hardy_lab_py.so` on the Python path.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hardy_lab::classify::ClassifyConfig;
use hardy_lab::geometry::{self, GridSpec};
use hardy_lab::hardy::{CoefficientFunction, ReproducingKernel};
use hardy_lab::operators::OperatorMatrix;
use hardy_lab::orbit::simulate_orbit;
use hardy_lab::products::phi_product_coefficients;
use hardy_lab::{families, parse_lambda, parse_phi, LabError};

fn value_error(err: LabError) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn symbol_from(coeffs: Vec<Complex64>) -> PyResult<CoefficientFunction> {
    CoefficientFunction::new(coeffs).map_err(value_error)
}

/// Coefficients of the unit-origin family member with parameter `p`.
#[pyfunction]
#[pyo3(signature = (p, order = 64))]
fn psi_symbol(p: f64, order: usize) -> PyResult<Vec<Complex64>> {
    Ok(families::psi_symbol(p, order)
        .map_err(value_error)?
        .coeffs()
        .to_vec())
}

/// The interior zero of the unit-origin family member, in closed form.
#[pyfunction]
fn psi_zero(p: f64) -> f64 {
    families::psi_zero(p)
}

/// Coefficients of a named example symbol (`phi0` or `phi1`).
#[pyfunction]
fn named_symbol(name: &str) -> PyResult<Vec<Complex64>> {
    match name {
        "phi0" => Ok(families::phi0().coeffs().to_vec()),
        "phi1" => Ok(families::phi1().coeffs().to_vec()),
        other => Err(PyValueError::new_err(format!(
            "unknown symbol `{other}` (expected phi0 or phi1)"
        ))),
    }
}

/// Coefficients of the reproducing kernel at `anchor`, truncated to `order`.
#[pyfunction]
#[pyo3(signature = (anchor, order = 64))]
fn kernel_coefficients(anchor: Complex64, order: usize) -> PyResult<Vec<Complex64>> {
    if order == 0 {
        return Err(PyValueError::new_err("order must be at least 1"));
    }
    let kernel = ReproducingKernel::new(anchor).map_err(value_error)?;
    Ok(kernel.materialize(order).coeffs().to_vec())
}

/// Evaluates a coefficient list at a point by Horner's rule.
#[pyfunction]
fn evaluate(coeffs: Vec<Complex64>, z: Complex64) -> PyResult<Complex64> {
    Ok(symbol_from(coeffs)?.evaluate(z))
}

/// The Hardy-space norm of a coefficient list.
#[pyfunction]
fn h2_norm(coeffs: Vec<Complex64>) -> PyResult<f64> {
    Ok(symbol_from(coeffs)?.h2_norm())
}

/// Largest modulus over a sampled circle of the given radius.
#[pyfunction]
#[pyo3(signature = (coeffs, radius = 1.0, samples = 4096))]
fn sup_modulus(coeffs: Vec<Complex64>, radius: f64, samples: usize) -> PyResult<f64> {
    if !(radius > 0.0 && radius <= 1.0) {
        return Err(PyValueError::new_err("radius must lie in (0, 1]"));
    }
    if samples < 8 {
        return Err(PyValueError::new_err("need at least 8 samples"));
    }
    Ok(symbol_from(coeffs)?.sup_modulus(radius, samples))
}

/// Coefficients of the `n`-step forward product of the symbol under `lam`.
#[pyfunction]
fn product_coefficients(
    coeffs: Vec<Complex64>,
    lam: Complex64,
    n: usize,
) -> PyResult<Vec<Complex64>> {
    let symbol = symbol_from(coeffs)?;
    let order = n.saturating_mul(symbol.len().saturating_sub(1)) + 1;
    if order > 65_536 {
        return Err(PyValueError::new_err("product degree too large"));
    }
    Ok(phi_product_coefficients(&symbol, lam, n, order)
        .coeffs()
        .to_vec())
}

/// Certified modulus extrema of a symbol over a disk grid.
///
/// Returns `(sup_lower, sup_witness, sup_envelope, inf_upper, inf_witness,
/// inf_envelope)`.
#[pyfunction]
#[pyo3(signature = (coeffs, radial = 32, angular = 128, outer = 1.0))]
fn modulus_extrema(
    coeffs: Vec<Complex64>,
    radial: usize,
    angular: usize,
    outer: f64,
) -> PyResult<(f64, Complex64, f64, f64, Complex64, f64)> {
    let symbol = symbol_from(coeffs)?;
    let grid = GridSpec::new(radial, angular, outer).map_err(value_error)?;
    let extrema = geometry::modulus_extrema(&symbol, &grid);
    Ok((
        extrema.sup_lower,
        extrema.sup_witness,
        extrema.sup_envelope,
        extrema.inf_upper,
        extrema.inf_witness,
        extrema.inf_envelope,
    ))
}

/// Boundary curve samples `(theta, value)` on the circle of given radius.
#[pyfunction]
#[pyo3(signature = (coeffs, radius = 1.0, samples = 4096))]
fn boundary_curve(
    coeffs: Vec<Complex64>,
    radius: f64,
    samples: usize,
) -> PyResult<Vec<(f64, Complex64)>> {
    if !(radius > 0.0 && radius <= 1.0) {
        return Err(PyValueError::new_err("radius must lie in (0, 1]"));
    }
    if samples < 8 {
        return Err(PyValueError::new_err("need at least 8 samples"));
    }
    let symbol = symbol_from(coeffs)?;
    Ok(geometry::boundary_curve(&symbol, radius, samples)
        .into_iter()
        .map(|s| (s.theta, s.value))
        .collect())
}

/// Argument-principle count of zeros strictly inside the given circle.
#[pyfunction]
#[pyo3(signature = (coeffs, radius = 1.0, samples = 4096))]
fn count_zeros(coeffs: Vec<Complex64>, radius: f64, samples: usize) -> PyResult<u32> {
    geometry::count_zeros(&symbol_from(coeffs)?, radius, samples).map_err(value_error)
}

/// Classifies the operator's dynamics; both inputs use the CLI grammar
/// (e.g. `"i"`, `"rot:1/4"`, `"golden"`; `"0.9,0.5"`, `"psi:0.5"`).
///
/// Returns the full verdict as a JSON string.
#[pyfunction]
fn classify_json(lambda_text: &str, phi_text: &str) -> PyResult<String> {
    let lambda = parse_lambda(lambda_text).map_err(value_error)?;
    let phi = parse_phi(phi_text).map_err(value_error)?;
    let config = ClassifyConfig::default();
    let verdict =
        hardy_lab::classify::classify_dynamics(&lambda, &phi, &config).map_err(value_error)?;
    serde_json::to_string_pretty(&verdict)
        .map_err(|err| PyValueError::new_err(format!("cannot serialize verdict: {err}")))
}

/// Log orbit norms `log ||T^n x0||` for the operator built from `lam` and
/// the symbol, at the given matrix truncation.
#[pyfunction]
#[pyo3(signature = (lam, coeffs, x0, steps, truncation = 256))]
fn orbit_log_norms(
    lam: Complex64,
    coeffs: Vec<Complex64>,
    x0: Vec<Complex64>,
    steps: usize,
    truncation: usize,
) -> PyResult<Vec<f64>> {
    if !(8..=8_192).contains(&truncation) {
        return Err(PyValueError::new_err("truncation must lie in 8..=8192"));
    }
    if steps > 1_000_000 {
        return Err(PyValueError::new_err("steps must be at most 1000000"));
    }
    let symbol = symbol_from(coeffs)?;
    let x0 = symbol_from(x0)?;
    let operator =
        OperatorMatrix::build_eigenoperator(lam, &symbol, truncation).map_err(value_error)?;
    Ok(simulate_orbit(&operator, &x0, steps, &[]).log_norms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thin_wrappers_round_trip_the_basic_objects() {
        let psi = psi_symbol(0.5, 64).unwrap();
        assert_eq!(psi.len(), 64);
        assert_eq!(count_zeros(psi, 1.0, 2048).unwrap(), 1);
        assert!((psi_zero(0.5) - 0.8).abs() <= 1e-15);

        assert!(named_symbol("phi2").is_err());
        assert!(sup_modulus(vec![Complex64::ONE], 2.0, 16).is_err());

        let curve = boundary_curve(named_symbol("phi0").unwrap(), 1.0, 16).unwrap();
        assert_eq!(curve.len(), 16);

        let kernel = kernel_coefficients(Complex64::new(0.3, 0.0), 32).unwrap();
        assert!((h2_norm(kernel).unwrap() - (1.0f64 / 0.91).sqrt()).abs() <= 1e-9);
    }

    #[test]
    fn classification_and_orbits_reach_the_library() {
        let verdict = classify_json("i", "0.9,0.5").unwrap();
        assert!(verdict.contains("\"NotHypercyclic\""));
        assert!(verdict.contains("ProvenByTheorem"));

        let phi0 = named_symbol("phi0").unwrap();
        let logs =
            orbit_log_norms(Complex64::new(0.0, 1.0), phi0, vec![Complex64::ONE], 16, 64)
                .unwrap();
        assert_eq!(logs.len(), 17);
        assert!((logs[16] - 16.0 * 0.9f64.ln()).abs() <= 1e-10);
    }
}

#[pymodule]
fn hardy_lab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(psi_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(psi_zero, m)?)?;
    m.add_function(wrap_pyfunction!(named_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(h2_norm, m)?)?;
    m.add_function(wrap_pyfunction!(sup_modulus, m)?)?;
    m.add_function(wrap_pyfunction!(product_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(modulus_extrema, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_curve, m)?)?;
    m.add_function(wrap_pyfunction!(count_zeros, m)?)?;
    m.add_function(wrap_pyfunction!(classify_json, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_log_norms, m)?)?;
    Ok(())
}
