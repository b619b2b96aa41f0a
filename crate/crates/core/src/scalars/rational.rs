use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn parse_err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

fn parse_integer(s: &str, offset: usize) -> Result<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() {
        return Err(parse_err(offset + 1, "expected digits"));
    }
    if let Some(pos) = digits.find(|c: char| !c.is_ascii_digit()) {
        let col = offset + (s.len() - digits.len()) + pos + 1;
        let c = digits[pos..].chars().next().unwrap_or('?');
        let msg = if c == '.' || c == 'e' || c == 'E' {
            "floating-point literals are not accepted; write an exact fraction like \"3/2\"".to_string()
        } else {
            format!("unexpected character {c:?}")
        };
        return Err(parse_err(col, msg));
    }
    s.parse::<BigInt>().map_err(|e| parse_err(offset + 1, e.to_string()))
}

/// Parses `"p"`, `"-p"` or `"p/q"` into an exact rational.
///
/// Decimal and exponent notation are rejected so that every input stays exact.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    if s.is_empty() {
        return Err(parse_err(1, "empty rational"));
    }
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_integer(s, 0)?)),
        Some((num, den)) => {
            let n = parse_integer(num, 0)?;
            if den.starts_with(['+', '-']) {
                return Err(parse_err(num.len() + 2, "denominator must be unsigned"));
            }
            let d = parse_integer(den, num.len() + 1)?;
            if d.is_zero() {
                return Err(parse_err(num.len() + 2, "zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Renders a rational as `"num/den"` in lowest terms (the denominator is
/// always written, `"3/1"` for integers).
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Compact human form: integers without a denominator.
pub(crate) fn format_rational_short(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
pub(crate) fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
