//! Exact rationals and their text syntax.
//!
//! The accepted syntax is `p` or `p/q` where `p` may carry a sign, `q` is a
//! positive integer and no whitespace is allowed anywhere. Display goes the
//! other way: integers print bare, everything else as reduced `p/q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` reduced. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("malformed rational {text:?} (expected p or p/q)"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix(['-', '+']).unwrap_or(num);
    if !digits(unsigned) {
        return Err(bad());
    }
    let numerator: BigInt = num.parse().map_err(|_| bad())?;
    let denominator = match den {
        None => BigInt::one(),
        Some(d) if digits(d) => d.parse::<BigInt>().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
    };
    if denominator.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(numerator, denominator))
}

/// Parses `"x,y"` into two rationals.
pub fn parse_pair(text: &str) -> Result<(Rational, Rational)> {
    match text.split(',').collect::<Vec<_>>().as_slice() {
        [x, y] => Ok((parse_rational(x)?, parse_rational(y)?)),
        _ => Err(Error::InvalidInput(format!("expected two comma-separated rationals, got {text:?}"))),
    }
}

pub fn parse_int_list(text: &str) -> Result<Vec<i64>> {
    if text.trim().is_empty() {
        return Err(Error::InvalidInput("empty degree list".into()));
    }
    text.split(',')
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("malformed integer {s:?} in list {text:?}")))
        })
        .collect()
}

/// Converts an integral rational to `i64`, if it is one and fits.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        i64::try_from(q.to_integer()).ok()
    } else {
        None
    }
}

pub fn pow(q: &Rational, k: u32) -> Rational {
    num_traits::pow(q.clone(), k as usize)
}
