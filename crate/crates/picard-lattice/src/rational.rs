//! Exact rational scalars and their textual forms.
//!
//! All numeric I/O in the workspace goes through two representations: the
//! exact `"p/q"` form (which round-trips bit-exactly) and a fixed-width
//! decimal approximation for human reading.

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

/// Exact arbitrary-precision rational number used throughout the workspace.
pub type Rat = BigRational;

/// Builds `n/d` exactly. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Error raised when a string is not a valid `"p/q"` or integer literal.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal {0:?}: expected \"p\" or \"p/q\" with integer p, q")]
    Malformed(String),
    #[error("zero denominator in rational literal {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"p/q"` or a plain integer into an exact rational.
///
/// Signs are accepted on the numerator (and on the denominator, which is
/// normalised away). Whitespace around the literal is tolerated.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseRatError::Empty);
    }
    let parse_int = |u: &str| -> Option<BigInt> { u.parse::<BigInt>().ok() };
    match t.split_once('/') {
        None => parse_int(t)
            .map(Rat::from_integer)
            .ok_or_else(|| ParseRatError::Malformed(s.to_owned())),
        Some((p, q)) => {
            let p = parse_int(p.trim()).ok_or_else(|| ParseRatError::Malformed(s.to_owned()))?;
            let q = parse_int(q.trim()).ok_or_else(|| ParseRatError::Malformed(s.to_owned()))?;
            if q.is_zero() {
                return Err(ParseRatError::ZeroDenominator(s.to_owned()));
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Canonical exact form: `"p/q"` in lowest terms, or `"p"` when integral.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal approximation with exactly `digits` fractional digits, rounded
/// half-away-from-zero. Deterministic, suitable for byte-identical reports.
pub fn decimal_string(r: &Rat, digits: u32) -> String {
    let scale = BigInt::from(10u8).pow(digits);
    let scaled = r * Rat::from_integer(scale.clone());
    // Round half-away-from-zero: floor(|x| + 1/2) with the sign reattached.
    let half = rat(1, 2);
    let rounded = (scaled.abs() + half).floor().to_integer();
    let (int_part, frac_part) = (rounded.clone() / &scale, rounded % &scale);
    let sign = if r.numer().sign() == Sign::Minus && !(int_part.is_zero() && frac_part.is_zero()) {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{frac:0>width$}",
        frac = frac_part.to_string(),
        width = digits as usize
    )
}

/// Exact square root of a nonnegative rational, if one exists.
///
/// Returns `None` for negative inputs and for rationals that are not perfect
/// squares; the answer, when present, satisfies `root * root == *r` exactly.
pub fn sqrt_exact(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let num_root = r.numer().sqrt();
    let den_root = r.denom().sqrt();
    if &(&num_root * &num_root) == r.numer() && &(&den_root * &den_root) == r.denom() {
        Some(Rat::new(num_root, den_root))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-7", "3/4", "-3/4", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
    }

    #[test]
    fn parse_normalises() {
        assert_eq!(parse_rat("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("3/-4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat(" 1/2 ").unwrap(), rat(1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!(parse_rat(""), Err(ParseRatError::Empty));
        assert!(matches!(parse_rat("a/b"), Err(ParseRatError::Malformed(_))));
        assert!(matches!(parse_rat("1/2/3"), Err(ParseRatError::Malformed(_))));
        assert!(matches!(
            parse_rat("1/0"),
            Err(ParseRatError::ZeroDenominator(_))
        ));
    }

    #[test]
    fn decimal_rendering_is_rounded_and_padded() {
        assert_eq!(decimal_string(&rat(1, 3), 12), "0.333333333333");
        assert_eq!(decimal_string(&rat(2, 3), 12), "0.666666666667");
        assert_eq!(decimal_string(&rat(-1, 3), 12), "-0.333333333333");
        assert_eq!(decimal_string(&rat(1, 2), 12), "0.500000000000");
        assert_eq!(decimal_string(&int(3), 12), "3.000000000000");
        assert_eq!(decimal_string(&rat(1, 100), 2), "0.01");
        assert_eq!(decimal_string(&rat(5, 1000), 2), "0.01");
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(sqrt_exact(&rat(49, 4)), Some(rat(7, 2)));
        assert_eq!(sqrt_exact(&int(0)), Some(int(0)));
        assert_eq!(sqrt_exact(&int(2)), None);
        assert_eq!(sqrt_exact(&rat(-1, 4)), None);
    }
}
