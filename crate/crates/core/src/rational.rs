//! Exact rational arithmetic for valuations.
//!
//! Every quantity in the toolkit — values, averages, thresholds — is an
//! arbitrary-precision rational. There is no floating point anywhere, so
//! comparisons are exact and verdicts never depend on rounding luck.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms by the
/// underlying library.
pub type Rational = BigRational;

/// `num / den` as a [`Rational`]. Panics if `den == 0`; intended for literals
/// in code and tests, not for parsing untrusted input (see [`parse_rational`]).
pub fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "ratio() denominator must be non-zero");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a [`Rational`].
pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Why a string failed to parse as a rational.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty string")]
    Empty,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid digit in {0:?}")]
    InvalidDigit(String),
}

/// Parses `"p"` or `"p/q"` with optional leading `-` on the numerator.
/// The denominator must be a positive integer; the result is reduced to
/// lowest terms. No whitespace or exponent forms are accepted.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer = parse_int(num_str, true)?;
    let denom = match den_str {
        Some(d) => {
            let q = parse_int(d, false)?;
            if q.is_zero() {
                return Err(ParseRationalError::ZeroDenominator);
            }
            q
        }
        None => BigInt::one(),
    };
    Ok(Rational::new(numer, denom))
}

fn parse_int(s: &str, allow_sign: bool) -> Result<BigInt, ParseRationalError> {
    let digits = match s.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        _ => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::InvalidDigit(s.to_string()));
    }
    let magnitude: BigInt = digits.parse().expect("digit-checked string parses");
    Ok(if digits.len() < s.len() {
        -magnitude
    } else {
        magnitude
    })
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise, with the sign
/// on the numerator and `q > 0`. `parse_rational(format_rational(x)) == x`.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Average of a list of rationals; the empty list averages to exactly zero.
pub fn average(values: &[Rational]) -> Rational {
    if values.is_empty() {
        return Rational::zero();
    }
    let sum: Rational = values.iter().sum();
    sum / integer(values.len() as i64)
}

/// True when `x >= 0`.
pub fn is_non_negative(x: &Rational) -> bool {
    !x.is_negative()
}
