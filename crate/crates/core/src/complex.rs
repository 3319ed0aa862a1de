//! Text form of complex scalars: `re`, `imi`, `re+imi`, `re-imi`.

use crate::error::{Error, Result};
use crate::jet::{check_finite, Scalar};

fn parse_real(s: &str, whole: &str) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|_| Error::Parse(format!("bad complex literal '{whole}'")))
}

fn parse_imag(s: &str, whole: &str) -> Result<f64> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(s, whole),
    }
}

/// Parses literals such as `1`, `-2.5`, `3i`, `-i`, `1+2i`, `1e-3-4.5i`.
pub fn parse_complex(text: &str) -> Result<Scalar> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    let z = if let Some(body) = s.strip_suffix('i') {
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
        match split {
            Some(p) => Scalar::new(parse_real(&body[..p], text)?, parse_imag(&body[p..], text)?),
            None => Scalar::new(0.0, parse_imag(body, text)?),
        }
    } else {
        Scalar::new(parse_real(&s, text)?, 0.0)
    };
    check_finite(z)
}

/// Canonical rendering: `re` when real, otherwise `(re+imi)`.
pub fn format_complex(z: Scalar) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("({}-{}i)", z.re, -z.im)
    } else {
        format!("({}+{}i)", z.re, z.im)
    }
}
