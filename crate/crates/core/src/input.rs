//! Text parsers for dilation scalars and symbols.
//!
//! These grammars are shared by every front end so that a scalar or a symbol
//! written once means the same thing everywhere.
//!
//! Dilation scalars (`parse_lambda`):
//!
//! * `golden` — the inverse golden ratio rotation (exactly irrational).
//! * `rot:p/q` — exactly `exp(2 pi i p / q)`.
//! * `angle:t` — `exp(2 pi i t)` with `t` in turns, nature detected.
//! * `irr:t` — same, with `t` asserted irrational by the caller.
//! * anything else — a complex literal (see `parse_complex`); a plain
//!   fraction like `1/2` is the real number one half, not a rotation.
//!
//! Symbols (`parse_phi`):
//!
//! * `psi:p` or `psi:p:order` — the built-in unit-origin family (default
//!   order 64), carrying the exact-unit-origin flag.
//! * `phi0`, `phi1` — the built-in affine symbols.
//! * `@path` — a JSON file holding an array of numbers or `[re, im]` pairs.
//! * otherwise — inline comma-separated complex literals, constant term
//!   first.

use num_complex::Complex64;

use crate::classify::{LambdaInput, SymbolInput};
use crate::error::{LabError, Result};
use crate::families::{phi0, phi1, psi_symbol};
use crate::hardy::CoefficientFunction;

/// Parses a complex literal: `1.5`, `-2`, `i`, `-i`, `2i`, `1+2i`,
/// `0.9-0.5i`.  Whitespace is ignored.
///
/// # Errors
///
/// Returns [`LabError::Config`] when the text is not a complex literal.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(LabError::Config("empty complex literal".into()));
    }
    let bad = || LabError::Config(format!("`{text}` is not a complex literal"));

    // Split at the last '+' or '-' that is not a leading sign and not part
    // of an exponent; if one exists, the text is `re±im i`.
    let bytes = s.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        let c = bytes[k];
        if (c == b'+' || c == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = Some(k);
            break;
        }
    }
    let (re_part, im_part) = match split {
        Some(k) if s.ends_with('i') => (&s[..k], &s[k..]),
        _ => {
            // Pure real or pure imaginary.
            return if let Some(im) = s.strip_suffix('i') {
                let im = match im {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    other => other.parse::<f64>().map_err(|_| bad())?,
                };
                Ok(Complex64::new(0.0, im))
            } else {
                let re = s.parse::<f64>().map_err(|_| bad())?;
                Ok(Complex64::new(re, 0.0))
            };
        }
    };
    let re = re_part.parse::<f64>().map_err(|_| bad())?;
    let im_text = im_part.strip_suffix('i').ok_or_else(bad)?;
    let im = match im_text {
        "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

/// Parses a dilation scalar per the module grammar.
///
/// # Errors
///
/// Returns [`LabError::Config`] for malformed text, a zero rotation
/// denominator, or a non-finite value.
pub fn parse_lambda(text: &str) -> Result<LambdaInput> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("golden") {
        return Ok(LambdaInput::GoldenRotation);
    }
    if let Some(rest) = t.strip_prefix("rot:") {
        let (num, den) = rest.split_once('/').ok_or_else(|| {
            LabError::Config(format!("`{text}`: expected rot:p/q with integers p, q"))
        })?;
        let num: i64 = num
            .trim()
            .parse()
            .map_err(|_| LabError::Config(format!("`{text}`: bad rotation numerator")))?;
        let den: u64 = den
            .trim()
            .parse()
            .map_err(|_| LabError::Config(format!("`{text}`: bad rotation denominator")))?;
        if den == 0 {
            return Err(LabError::Config(format!(
                "`{text}`: rotation denominator must be nonzero"
            )));
        }
        return Ok(LambdaInput::RationalRotation { num, den });
    }
    if let Some(rest) = t.strip_prefix("angle:") {
        let turns: f64 = rest
            .trim()
            .parse()
            .map_err(|_| LabError::Config(format!("`{text}`: bad turns value")))?;
        if !turns.is_finite() {
            return Err(LabError::Config(format!("`{text}`: turns must be finite")));
        }
        return Ok(LambdaInput::AngleTurns(turns));
    }
    if let Some(rest) = t.strip_prefix("irr:") {
        let turns: f64 = rest
            .trim()
            .parse()
            .map_err(|_| LabError::Config(format!("`{text}`: bad turns value")))?;
        if !turns.is_finite() {
            return Err(LabError::Config(format!("`{text}`: turns must be finite")));
        }
        return Ok(LambdaInput::AssertedIrrationalTurns(turns));
    }
    // The four Gaussian units on the circle are exact rotations, so the
    // classifier's root-of-unity branch gets a proven (not guessed) period.
    match t {
        "1" | "+1" => return Ok(LambdaInput::RationalRotation { num: 0, den: 1 }),
        "-1" => return Ok(LambdaInput::RationalRotation { num: 1, den: 2 }),
        "i" | "+i" => return Ok(LambdaInput::RationalRotation { num: 1, den: 4 }),
        "-i" => return Ok(LambdaInput::RationalRotation { num: 3, den: 4 }),
        _ => {}
    }
    // A plain fraction is a real number, not a rotation.
    if let Some((num, den)) = t.split_once('/') {
        let num: f64 = num
            .trim()
            .parse()
            .map_err(|_| LabError::Config(format!("`{text}` is not a scalar")))?;
        let den: f64 = den
            .trim()
            .parse()
            .map_err(|_| LabError::Config(format!("`{text}` is not a scalar")))?;
        if den == 0.0 || !(num / den).is_finite() {
            return Err(LabError::Config(format!("`{text}`: division is not finite")));
        }
        return Ok(LambdaInput::Numeric(Complex64::new(num / den, 0.0)));
    }
    let value = parse_complex(t)?;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(LabError::Config(format!("`{text}` is not finite")));
    }
    Ok(LambdaInput::Numeric(value))
}

/// Parses a symbol per the module grammar.
///
/// # Errors
///
/// Returns [`LabError::Config`] for malformed text, unreadable files, or
/// invalid coefficient lists.
pub fn parse_phi(text: &str) -> Result<SymbolInput> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix("psi:") {
        let (p_text, order) = match rest.split_once(':') {
            Some((p, o)) => {
                let order: usize = o.trim().parse().map_err(|_| {
                    LabError::Config(format!("`{text}`: bad truncation order"))
                })?;
                (p, order)
            }
            None => (rest, 64),
        };
        let p: f64 = p_text
            .trim()
            .parse()
            .map_err(|_| LabError::Config(format!("`{text}`: bad family parameter")))?;
        let function = psi_symbol(p, order)?;
        return Ok(SymbolInput {
            function,
            origin_exact_unit: true,
        });
    }
    if t.eq_ignore_ascii_case("phi0") {
        return Ok(SymbolInput::plain(phi0()));
    }
    if t.eq_ignore_ascii_case("phi1") {
        return Ok(SymbolInput::plain(phi1()));
    }
    if let Some(path) = t.strip_prefix('@') {
        let raw = std::fs::read_to_string(path)
            .map_err(|e| LabError::Config(format!("cannot read `{path}`: {e}")))?;
        let values: Vec<serde_json::Value> = serde_json::from_str(&raw)
            .map_err(|e| LabError::Config(format!("`{path}` is not a JSON array: {e}")))?;
        let mut coeffs = Vec::with_capacity(values.len());
        for (k, v) in values.iter().enumerate() {
            let c = match v {
                serde_json::Value::Number(n) => {
                    Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)
                }
                serde_json::Value::Array(pair) if pair.len() == 2 => {
                    let re = pair[0].as_f64().unwrap_or(f64::NAN);
                    let im = pair[1].as_f64().unwrap_or(f64::NAN);
                    Complex64::new(re, im)
                }
                _ => {
                    return Err(LabError::Config(format!(
                        "`{path}` entry {k}: expected a number or a [re, im] pair"
                    )))
                }
            };
            coeffs.push(c);
        }
        let function = CoefficientFunction::new(coeffs)?;
        return Ok(SymbolInput::plain(function));
    }
    let coeffs: Result<Vec<Complex64>> = t.split(',').map(parse_complex).collect();
    let function = CoefficientFunction::new(coeffs?)?;
    Ok(SymbolInput::plain(function))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_rotation, RotationKind};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_literals_cover_the_grammar() {
        assert_eq!(parse_complex("1.5").unwrap(), c(1.5, 0.0));
        assert_eq!(parse_complex("-2").unwrap(), c(-2.0, 0.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("2i").unwrap(), c(0.0, 2.0));
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("0.9-0.5i").unwrap(), c(0.9, -0.5));
        assert_eq!(parse_complex(" 1 + 2i ").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("1e-3").unwrap(), c(1e-3, 0.0));
        assert_eq!(parse_complex("1e-3+2e-4i").unwrap(), c(1e-3, 2e-4));
        assert_eq!(parse_complex("-0.5-i").unwrap(), c(-0.5, -1.0));
        assert!(parse_complex("pear").is_err());
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1+2").is_err());
    }

    #[test]
    fn lambda_grammar_distinguishes_fractions_from_rotations() {
        // A bare fraction is a real scalar.
        let half = parse_lambda("1/2").unwrap();
        assert_eq!(half, LambdaInput::Numeric(c(0.5, 0.0)));

        // A rot: prefix is an exact rotation number.
        let quarter = parse_lambda("rot:1/4").unwrap();
        assert_eq!(quarter, LambdaInput::RationalRotation { num: 1, den: 4 });
        let r = classify_rotation(&quarter, 100, 1e-9).unwrap();
        assert_eq!(r.kind, RotationKind::RootOfUnity(4));

        assert_eq!(parse_lambda("golden").unwrap(), LambdaInput::GoldenRotation);
        assert_eq!(
            parse_lambda("angle:0.25").unwrap(),
            LambdaInput::AngleTurns(0.25)
        );
        assert_eq!(
            parse_lambda("irr:0.123456").unwrap(),
            LambdaInput::AssertedIrrationalTurns(0.123456)
        );
        // Exact Gaussian units on the circle are promoted to exact rotations.
        assert_eq!(
            parse_lambda("i").unwrap(),
            LambdaInput::RationalRotation { num: 1, den: 4 }
        );
        assert_eq!(
            parse_lambda("-1").unwrap(),
            LambdaInput::RationalRotation { num: 1, den: 2 }
        );
        assert_eq!(
            parse_lambda("1").unwrap(),
            LambdaInput::RationalRotation { num: 0, den: 1 }
        );
        assert_eq!(parse_lambda("2i").unwrap(), LambdaInput::Numeric(c(0.0, 2.0)));
        assert_eq!(parse_lambda("0.3i").unwrap(), LambdaInput::Numeric(c(0.0, 0.3)));
        assert!(parse_lambda("rot:1/0").is_err());
        assert!(parse_lambda("rot:x/4").is_err());
        assert!(parse_lambda("1/0").is_err());
        assert!(parse_lambda("angle:inf").is_err());
    }

    #[test]
    fn phi_grammar_covers_families_files_and_inline_lists() {
        let psi = parse_phi("psi:0.5").unwrap();
        assert!(psi.origin_exact_unit);
        assert_eq!(psi.function.len(), 64);
        let psi = parse_phi("psi:0.5:16").unwrap();
        assert_eq!(psi.function.len(), 16);

        let a = parse_phi("phi0").unwrap();
        assert!(!a.origin_exact_unit);
        assert_eq!(a.function.coeff(0), c(0.9, 0.0));
        assert_eq!(parse_phi("phi1").unwrap().function.coeff(0), c(0.99, 0.0));

        let inline = parse_phi("0.9, 0.5").unwrap();
        assert_eq!(inline.function.coeffs(), phi0().coeffs());
        let inline = parse_phi("1+i, -0.5i").unwrap();
        assert_eq!(inline.function.coeff(0), c(1.0, 1.0));
        assert_eq!(inline.function.coeff(1), c(0.0, -0.5));

        let dir = std::env::temp_dir().join("hardy-lab-input-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("symbol.json");
        std::fs::write(&path, "[0.9, [0.0, 0.5]]").unwrap();
        let from_file = parse_phi(&format!("@{}", path.display())).unwrap();
        assert_eq!(from_file.function.coeff(0), c(0.9, 0.0));
        assert_eq!(from_file.function.coeff(1), c(0.0, 0.5));

        assert!(parse_phi("psi:0.5:zero").is_err());
        assert!(parse_phi("@/definitely/not/a/file.json").is_err());
        assert!(parse_phi("1,,2").is_err());
    }
}
