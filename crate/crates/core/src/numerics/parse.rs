//! Scalar literals: `p/q` rationals and decimals (`-1.25`, `3e-4`).
//! Both parse to exact rationals.

use super::scalar::Scalar;
use crate::error::{Error, Result};
use rug::{Integer, Rational};

// Keeps 10^exp allocations bounded for hostile input.
const MAX_DECIMAL_EXPONENT: i64 = 4096;

fn parse_int(digits: &str, src: &str) -> Result<Integer> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(src.to_string()));
    }
    Integer::from_str_radix(digits, 10).map_err(|_| Error::Parse(src.to_string()))
}

fn split_sign(s: &str) -> (bool, &str) {
    match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    }
}

/// Parses a rational or decimal literal into an exact [`Scalar`].
pub fn parse_scalar(src: &str) -> Result<Scalar> {
    let s = src.trim();
    let (neg, body) = split_sign(s);
    let value = if let Some((num, den)) = body.split_once('/') {
        let num = parse_int(num, src)?;
        let den = parse_int(den, src)?;
        if den == 0 {
            return Err(Error::Parse(src.to_string()));
        }
        Rational::from((num, den))
    } else {
        parse_decimal(body, src)?
    };
    Ok(Scalar::Exact(if neg { -value } else { value }))
}

fn parse_decimal(body: &str, src: &str) -> Result<Rational> {
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(i) => {
            let (neg, digits) = split_sign(&body[i + 1..]);
            let e = parse_int(digits, src)?.to_i64().filter(|e| *e <= MAX_DECIMAL_EXPONENT).ok_or_else(|| Error::Parse(src.to_string()))?;
            (&body[..i], if neg { -e } else { e })
        }
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse(src.to_string()));
    }
    let digits = format!("{int_part}{frac_part}");
    let n = parse_int(&digits, src)?;
    let scale = exp - frac_part.len() as i64;
    if scale.abs() > 2 * MAX_DECIMAL_EXPONENT {
        return Err(Error::Parse(src.to_string()));
    }
    let pow10 = |e: i64| Integer::from(Integer::u_pow_u(10, e as u32));
    Ok(if scale >= 0 { Rational::from(n * pow10(scale)) } else { Rational::from((n, pow10(-scale))) })
}

/// Parses a comma-separated list of scalar literals; empty input is an empty list.
pub fn parse_scalar_list(src: &str) -> Result<Vec<Scalar>> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    src.split(',').map(parse_scalar).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rationals_and_decimals() {
        assert_eq!(parse_scalar("1/2").unwrap(), Scalar::ratio(1, 2));
        assert_eq!(parse_scalar("-3/6").unwrap(), Scalar::ratio(-1, 2));
        assert_eq!(parse_scalar("0.25").unwrap(), Scalar::ratio(1, 4));
        assert_eq!(parse_scalar(" 2.5e-1 ").unwrap(), Scalar::ratio(1, 4));
        assert_eq!(parse_scalar("1E3").unwrap(), Scalar::int(1000));
        assert_eq!(parse_scalar(".5").unwrap(), Scalar::ratio(1, 2));
        assert_eq!(parse_scalar("5.").unwrap(), Scalar::int(5));
        assert_eq!(parse_scalar("+7").unwrap(), Scalar::int(7));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "-", "1/0", "1/", "/2", "a", "1.2.3", "1e", "1e99999", "nan", "inf", "1/-2", "--1", "."] {
            assert!(parse_scalar(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn lists() {
        let v = parse_scalar_list("1,-4").unwrap();
        assert_eq!(v, vec![Scalar::int(1), Scalar::int(-4)]);
        assert!(parse_scalar_list("").unwrap().is_empty());
        assert!(parse_scalar_list("1,,2").is_err());
    }

    proptest! {
        #[test]
        fn rational_literals_roundtrip(n in -100000i64..100000, d in 1i64..100000) {
            let s = Scalar::ratio(n, d);
            prop_assert_eq!(parse_scalar(&s.to_string()).unwrap(), s);
        }

        #[test]
        fn never_panics(s in "\\PC{0,40}") {
            let _ = parse_scalar(&s);
        }
    }
}
