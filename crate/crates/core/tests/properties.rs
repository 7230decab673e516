//! Property tests for the algebraic identities the library relies on.

use num_complex::Complex64;
use proptest::prelude::*;

use hardy_lab::hardy::{CoefficientFunction, ReproducingKernel};
use hardy_lab::operators::OperatorMatrix;
use hardy_lab::orbit::simulate_orbit;
use hardy_lab::products::{eval_product, ProductKind};

/// A complex number with both parts in `[-m, m]`.
fn complex_in_box(m: f64) -> impl Strategy<Value = Complex64> {
    (-m..m, -m..m).prop_map(|(re, im)| Complex64::new(re, im))
}

/// A complex number strictly inside the disk of radius `r`.
fn complex_in_disk(r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..r, 0.0..std::f64::consts::TAU)
        .prop_map(|(rad, theta)| Complex64::from_polar(rad, theta))
}

/// A coefficient vector of length 1 to 8 with entries in a box.
fn coefficients() -> impl Strategy<Value = Vec<Complex64>> {
    proptest::collection::vec(complex_in_box(2.0), 1..=8)
}

/// A symbol function from random coefficients.
fn symbol() -> impl Strategy<Value = CoefficientFunction> {
    coefficients().prop_map(|c| CoefficientFunction::new(c).expect("finite coefficients"))
}

proptest! {
    /// Dilating twice composes multiplicatively.
    #[test]
    fn dilation_composes(f in symbol(), a in complex_in_disk(1.0), b in complex_in_disk(1.0)) {
        let twice = f.dilate(a).dilate(b);
        let once = f.dilate(a * b);
        for k in 0..f.len() {
            prop_assert!((twice.coeff(k) - once.coeff(k)).norm() <= 1e-12);
        }
    }

    /// Conjugating coefficients twice is the identity.
    #[test]
    fn bar_symbol_is_an_involution(f in symbol()) {
        let round = f.bar_symbol().bar_symbol();
        for k in 0..f.len() {
            prop_assert_eq!(round.coeff(k), f.coeff(k));
        }
    }

    /// Dilation commutes with evaluation: `(f ∘ μ)(z) = f(μ z)`.
    #[test]
    fn dilation_matches_evaluation(
        f in symbol(),
        mu in complex_in_disk(1.0),
        z in complex_in_disk(1.0),
    ) {
        let lhs = f.dilate(mu).evaluate(z);
        let rhs = f.evaluate(mu * z);
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
    }

    /// The kernel reproduces point evaluations through the inner product.
    #[test]
    fn kernel_reproduces_evaluation(f in symbol(), a in complex_in_disk(0.95)) {
        let kernel = ReproducingKernel::new(a).unwrap();
        // The pairing truncates at the polynomial's degree, so any kernel
        // order at least that long makes the identity exact.
        let k = kernel.materialize(64);
        let paired = f.h2_inner(&k);
        let direct = f.evaluate(a);
        prop_assert!((paired - direct).norm() <= 1e-9 * (1.0 + direct.norm()));
    }

    /// The first matrix row of the operator recovers the symbol exactly.
    #[test]
    fn superdiagonal_roundtrip_recovers_the_symbol(
        f in symbol(),
        lambda in complex_in_disk(1.0),
    ) {
        prop_assume!(lambda.norm() > 1e-3);
        let operator = OperatorMatrix::build_eigenoperator(lambda, &f, 16).unwrap();
        let recovered = operator.superdiagonal_structure(lambda, 1e-9).unwrap();
        for k in 0..f.len() {
            prop_assert!((recovered.coeff(k) - f.coeff(k)).norm() <= 1e-12);
        }
    }

    /// Scaling the start vector shifts log norms and leaves projective
    /// distances unchanged.
    #[test]
    fn orbit_projective_distances_are_scale_invariant(
        f in symbol(),
        lambda in complex_in_disk(1.0),
        scale in 0.1f64..10.0,
    ) {
        let operator = OperatorMatrix::build_eigenoperator(lambda, &f, 12).unwrap();
        let x0 = CoefficientFunction::from_real(&[0.3, -0.4, 0.5]).unwrap();
        let scaled = x0.scale(Complex64::new(scale, 0.0));
        let target = CoefficientFunction::from_real(&[1.0, 1.0]).unwrap();
        let t1 = simulate_orbit(&operator, &x0, 10, std::slice::from_ref(&target));
        let t2 = simulate_orbit(&operator, &scaled, 10, std::slice::from_ref(&target));
        for (d1, d2) in t1.projective_distances[0]
            .iter()
            .zip(t2.projective_distances[0].iter())
        {
            prop_assert!((d1 - d2).abs() <= 1e-9);
        }
        for (l1, l2) in t1.log_norms.iter().zip(t2.log_norms.iter()) {
            if *l1 > -1e299 {
                prop_assert!((l2 - l1 - scale.ln()).abs() <= 1e-9);
            }
        }
    }

    /// The log-domain product evaluator agrees with direct multiplication
    /// over short horizons where the direct product cannot overflow.
    #[test]
    fn log_products_match_direct_multiplication(
        f in symbol(),
        lambda in complex_in_disk(1.0),
        z in complex_in_disk(1.0),
        n in 1usize..20,
    ) {
        prop_assume!(lambda.norm() > 1e-3);
        let via_log = eval_product(ProductKind::Phi, &f, lambda, n, z).unwrap();
        let mut direct = Complex64::ONE;
        let mut w = z;
        for _ in 0..n {
            direct *= f.evaluate(w);
            w *= lambda;
        }
        if direct.norm() > 1e-280 {
            let rebuilt = via_log.to_complex();
            prop_assert!(
                (rebuilt - direct).norm() <= 1e-9 * (1.0 + direct.norm()),
                "log route {rebuilt} vs direct {direct}"
            );
        } else {
            prop_assert!(via_log.log_abs() <= -600.0 || via_log.is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The winding count finds exactly the planted zeros.
    #[test]
    fn winding_count_matches_planted_roots(
        inner in proptest::collection::vec(complex_in_disk(0.85), 0..=3),
        outer in proptest::collection::vec(complex_in_box(1.0), 0..=2),
    ) {
        // Keep every root visibly away from the counting contour.
        let outer: Vec<Complex64> = outer
            .into_iter()
            .map(|w| {
                let shifted = w + Complex64::new(2.5, 0.0);
                shifted * (1.3 / shifted.norm().max(1.3))
            })
            .collect();
        prop_assume!(outer.iter().all(|w| w.norm() >= 1.15));

        let mut coeffs = vec![Complex64::ONE];
        for root in inner.iter().chain(outer.iter()) {
            // Multiply by (z - root).
            let mut next = vec![Complex64::ZERO; coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * root;
            }
            coeffs = next;
        }
        let poly = CoefficientFunction::new(coeffs).unwrap();
        let counted = hardy_lab::geometry::count_zeros(&poly, 1.0, 2048).unwrap();
        prop_assert_eq!(counted as usize, inner.len());
    }
}
