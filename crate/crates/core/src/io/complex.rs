//! Complex literals of the form `a+bi`.

use num_complex::Complex64;

use crate::error::{Error, Result};

fn real(s: &str, whole: &str) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|_| Error::Parse(format!("bad complex literal {whole:?}")))
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`, with exponents allowed in either part.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(real(&s, text)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => real(t, text),
        }
    };
    match split {
        Some(k) => Ok(Complex64::new(real(&body[..k], text)?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// Shortest round-trip decimal form, e.g. `1+1i`, `0.8+0i`, `2.5-0.3i`.
pub fn format_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn literals() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("1+1i").unwrap(), c(1.0, 1.0));
        assert_eq!(parse_complex("0.8").unwrap(), c(0.8, 0.0));
        assert_eq!(parse_complex("-2.5-0.3i").unwrap(), c(-2.5, -0.3));
        assert_eq!(parse_complex("2i").unwrap(), c(0.0, 2.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1e-3+2E+1i").unwrap(), c(1e-3, 20.0));
        assert_eq!(parse_complex(" 1 + 0.5i ").unwrap(), c(1.0, 0.5));
        assert_eq!(parse_complex("3-i").unwrap(), c(3.0, -1.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1+xi").is_err());
        assert!(parse_complex("abc").is_err());
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
            let z = Complex64::new(re, im);
            prop_assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
    }
}
