//! Exact rational helpers. Every threshold in the crate (`ε|X|`, `ε²|G|`,
//! `xy|G|`, ...) is a [`Rational`] and is compared against integer counts
//! without any rounding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `r * n` for a count `n`.
pub fn scale(r: &Rational, n: usize) -> Rational {
    r * int(n)
}

/// `⌊r⌋` clamped into `usize` (negative values map to 0).
pub fn floor_usize(r: &Rational) -> usize {
    if r.is_negative() {
        return 0;
    }
    r.floor().to_integer().to_usize().unwrap_or(usize::MAX)
}

/// `⌈r⌉` clamped into `usize` (negative values map to 0).
pub fn ceil_usize(r: &Rational) -> usize {
    if r.is_negative() {
        return 0;
    }
    r.ceil().to_integer().to_usize().unwrap_or(usize::MAX)
}

/// `count <= r`, exactly.
pub fn le(count: usize, r: &Rational) -> bool {
    int(count) <= *r
}

/// `count >= r`, exactly.
pub fn ge(count: usize, r: &Rational) -> bool {
    int(count) >= *r
}

/// `count > r`, exactly.
pub fn gt(count: usize, r: &Rational) -> bool {
    int(count) > *r
}

pub fn inverse(r: &Rational) -> Result<Rational> {
    if r.is_zero() {
        return Err(Error::input("division by zero"));
    }
    Ok(r.recip())
}

pub fn in_closed_unit(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.35` (converted
/// exactly with a power-of-ten denominator).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::input(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::input(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !whole_digits.chars().all(|c| c.is_ascii_digit())
            || (whole_digits.is_empty() && frac.is_empty())
        {
            return Err(bad());
        }
        let digits = format!("{whole_digits}{frac}");
        let mut numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10u32), frac.len());
        return Ok(Rational::new(numer, denom));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// `p/q`, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Numerator and denominator as `u64`, for sampling. `None` if either does
/// not fit or the value is negative.
pub(crate) fn as_u64_pair(r: &Rational) -> Option<(u64, u64)> {
    if r.is_negative() {
        return None;
    }
    Some((r.numer().to_u64()?, r.denom().to_u64()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_decimals_and_integers() {
        assert_eq!(parse_rational("3/10").unwrap(), ratio(3, 10));
        assert_eq!(parse_rational("0.3").unwrap(), ratio(3, 10));
        assert_eq!(parse_rational(".25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("2").unwrap(), ratio(2, 1));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), ratio(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1e-3").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn rounding_is_exact() {
        assert_eq!(floor_usize(&ratio(16, 3)), 5);
        assert_eq!(ceil_usize(&ratio(16, 3)), 6);
        assert_eq!(ceil_usize(&ratio(6, 3)), 2);
        assert_eq!(floor_usize(&ratio(-1, 2)), 0);
        assert!(le(2, &ratio(5, 2)));
        assert!(!le(3, &ratio(5, 2)));
        assert!(gt(6, &ratio(16, 3)));
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&ratio(4, 6)), "2/3");
        assert_eq!(format_rational(&ratio(4, 2)), "2");
        assert_eq!(format_rational(&ratio(0, 5)), "0");
    }
}
