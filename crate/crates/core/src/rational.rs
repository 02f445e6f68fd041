//! Exact rational scalars and their canonical `"p/q"` text form.
//!
//! Every number that feeds a decision (weights, slopes, LP pivots, embedded
//! coordinates) is a [`Rational`]; floating point is never used. The text
//! form is always `p/q` in lowest terms with `q > 0`, so serialized output
//! is byte-stable.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// The rational value of a machine integer.
pub fn rat(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Formats `r` as `p/q` in lowest terms with positive denominator.
pub fn format_rational(r: &Rational) -> String {
    debug_assert!(r.denom().is_positive());
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` (or a bare integer `p`) into a rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidParameter(format!("malformed rational '{text}'"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let numer: BigInt = num.trim().parse().map_err(|_| bad())?;
    let denom: BigInt = den.trim().parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "zero denominator in '{text}'"
        )));
    }
    Ok(Rational::new(numer, denom))
}

/// Parses a comma-separated list of rationals.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(|part| parse_rational(part.trim()))
        .collect()
}

/// Formats a vector of rationals as `p/q` strings.
pub fn format_rational_vec(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

/// Parses a vector of `p/q` strings.
pub fn parse_rational_vec(values: &[String]) -> Result<Vec<Rational>> {
    values.iter().map(|s| parse_rational(s)).collect()
}

/// True when `r` is the integer one.
pub fn is_one(r: &Rational) -> bool {
    r.denom().is_one() && r.numer().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_in_lowest_terms_with_positive_denominator() {
        let r = Rational::new(BigInt::from(-4), BigInt::from(-6));
        assert_eq!(format_rational(&r), "2/3");
        let r = Rational::new(BigInt::from(4), BigInt::from(-6));
        assert_eq!(format_rational(&r), "-2/3");
        assert_eq!(format_rational(&rat(7)), "7/1");
        assert_eq!(format_rational(&rat(0)), "0/1");
    }

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(
            parse_rational("3/4").unwrap(),
            Rational::new(3.into(), 4.into())
        );
        assert_eq!(
            parse_rational("-3/4").unwrap(),
            Rational::new((-3).into(), 4.into())
        );
        assert_eq!(
            parse_rational("3/-4").unwrap(),
            Rational::new((-3).into(), 4.into())
        );
        assert_eq!(parse_rational("5").unwrap(), rat(5));
        assert_eq!(
            parse_rational(" 10/4 ").unwrap(),
            Rational::new(5.into(), 2.into())
        );
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn round_trips_through_text() {
        for (p, q) in [(0i64, 1i64), (1, 2), (-7, 3), (22, 7), (5, 1)] {
            let r = Rational::new(p.into(), q.into());
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }

    #[test]
    fn parses_comma_separated_lists() {
        let v = parse_rational_list("1, 1/2, -3/4").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[1], Rational::new(1.into(), 2.into()));
    }
}
