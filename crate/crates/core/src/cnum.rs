//! Complex literal parsing and deterministic float formatting.
//!
//! Literals follow a single grammar: `a`, `bi`, `a+bi`, `a-bi` where `a` and
//! `b` are ordinary float literals (scientific notation allowed) and the
//! imaginary unit is spelled `i` as a suffix. A bare `i` or `-i` means `±1i`.

use crate::{C64, Error, Result};

/// Parse a complex literal.
pub fn parse_complex(s: &str) -> Result<C64> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::InvalidArgument("empty complex literal".into()));
    }
    let bad = || Error::InvalidArgument(format!("malformed complex literal `{s}`"));
    if let Some(body) = t.strip_suffix(['i', 'I']) {
        // Either pure imaginary or a+bi / a-bi. Find the sign that separates
        // the real part from the imaginary part; skip a leading sign and any
        // sign directly after an exponent marker.
        if let Some(pos) = split_point(body) {
            let (re, im) = body.split_at(pos);
            let re: f64 = re.parse().map_err(|_| bad())?;
            let im = parse_signed_coeff(im).ok_or_else(bad)?;
            Ok(C64::new(re, im))
        } else {
            let im = parse_signed_coeff(body).ok_or_else(bad)?;
            Ok(C64::new(0.0, im))
        }
    } else {
        let re: f64 = t.parse().map_err(|_| bad())?;
        Ok(C64::new(re, 0.0))
    }
}

/// Index of the `+`/`-` separating real and imaginary parts, if present.
fn split_point(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    for (idx, &b) in bytes.iter().enumerate().skip(1) {
        if b == b'+' || b == b'-' {
            let prev = bytes[idx - 1];
            if prev == b'e' || prev == b'E' {
                continue;
            }
            return Some(idx);
        }
    }
    None
}

/// Parse the imaginary coefficient, allowing `+`/`-`/empty to mean `±1`.
fn parse_signed_coeff(s: &str) -> Option<f64> {
    match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => s.parse().ok(),
    }
}

/// Format a float with 17 significant digits (round-trip safe).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Format a complex number as `a+bi` using 17 significant digits per part.
pub fn fmt_complex(z: C64) -> String {
    if z.im >= 0.0 || z.im.is_nan() {
        format!("{}+{}i", fmt_f64(z.re), fmt_f64(z.im))
    } else {
        format!("{}-{}i", fmt_f64(z.re), fmt_f64(-z.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_four_forms() {
        assert_eq!(parse_complex("1.5").unwrap(), C64::new(1.5, 0.0));
        assert_eq!(parse_complex("2i").unwrap(), C64::new(0.0, 2.0));
        assert_eq!(parse_complex("1+2i").unwrap(), C64::new(1.0, 2.0));
        assert_eq!(parse_complex("1-2i").unwrap(), C64::new(1.0, -2.0));
        assert_eq!(parse_complex("-0.25i").unwrap(), C64::new(0.0, -0.25));
        assert_eq!(parse_complex("i").unwrap(), C64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
    }

    #[test]
    fn parses_exponent_signs() {
        assert_eq!(parse_complex("1e-3").unwrap(), C64::new(1e-3, 0.0));
        assert_eq!(parse_complex("1e-3+2e-4i").unwrap(), C64::new(1e-3, 2e-4));
        assert_eq!(parse_complex("-1E+2-3i").unwrap(), C64::new(-100.0, -3.0));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1+2j", "1i+2", "++i", "1+2", "2 i"] {
            assert!(parse_complex(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn fmt_round_trips() {
        for &x in &[0.0, 1.0, -1.0 / 3.0, 1e-300, std::f64::consts::PI] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }

    proptest::proptest! {
        #[test]
        fn complex_format_parse_roundtrip(re in -1e12f64..1e12, im in -1e12f64..1e12) {
            let z = C64::new(re, im);
            let back = parse_complex(&fmt_complex(z)).unwrap();
            proptest::prop_assert_eq!(back, z);
        }
    }
}
