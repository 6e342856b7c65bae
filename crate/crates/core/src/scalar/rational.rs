//! Arbitrary-precision rationals and their textual form.
//!
//! Accepted syntax: an optional sign followed by an integer (`32`), a
//! fraction (`751/32`) or a decimal (`-2.2838`). Decimals are read exactly
//! as `digits / 10^k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::ScalarError;

/// Canonical reduced fraction with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let bad = || ScalarError::Parse(text.to_string());
    let s = text.trim();
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let value = if let Some((num, den)) = body.split_once('/') {
        if !digits(num) || !digits(den) {
            return Err(bad());
        }
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Rational::new(num.parse().map_err(|_| bad())?, den)
    } else if let Some((int, frac)) = body.split_once('.') {
        // "3." and ".5" are rejected; both sides need digits.
        if !digits(int) || !digits(frac) {
            return Err(bad());
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let all: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        Rational::new(all, scale)
    } else {
        if !digits(body) {
            return Err(bad());
        }
        Rational::from_integer(body.parse().map_err(|_| bad())?)
    };
    Ok(if negative { -value } else { value })
}

/// `n` for integers, `n/d` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest double, falling back to a scaled division for huge operands.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let (n, d) = (r.numer(), r.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(1000);
    let n = (n.abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (d >> shift).to_f64().unwrap_or(f64::INFINITY);
    let v = n / d;
    if r.is_negative() {
        -v
    } else {
        v
    }
}

/// Exact value of a finite double.
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_three_forms() {
        assert_eq!(parse_rational("32").unwrap(), rat(32));
        assert_eq!(parse_rational("751/32").unwrap(), ratio(751, 32));
        assert_eq!(parse_rational("-2.2838").unwrap(), ratio(-22838, 10000));
        assert_eq!(parse_rational("+4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_rational("-0").unwrap(), rat(0));
    }

    #[test]
    fn rejects_other_forms() {
        for s in ["", "-", "1e5", "3.", ".5", "1/0", "1/-2", "a", "1//2", "--1", "1.2.3", "inf"] {
            assert!(parse_rational(s).is_err(), "{s} should be rejected");
        }
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(7)), "7");
        assert_eq!(format_rational(&rat(0)), "0");
    }

    #[test]
    fn huge_rationals_convert_to_f64() {
        let big = BigInt::from(10u32).pow(400u32);
        let r = Rational::new(big.clone() * 3, big);
        assert!((rational_to_f64(&r) - 3.0).abs() < 1e-12);
    }
}
