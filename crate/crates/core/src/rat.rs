//! Exact rationals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Canonical report form: always `p/q` in lowest terms.
pub fn fmt(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Compact form used in documents: integers without a denominator.
pub fn fmt_compact(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        fmt(r)
    }
}

/// Parses an integer or `p/q` literal. Decimal and exponent forms are rejected.
pub fn parse(s: &str) -> Result<Rat> {
    if s.is_empty() {
        return Err(Error::input("empty number"));
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(Error::input(format!(
            "floating-point literal `{s}` is not allowed; write it as p/q"
        )));
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = parse_int(n, s)?;
    let den = match d {
        Some(d) => {
            if d.starts_with(['-', '+']) {
                return Err(Error::input(format!(
                    "denominator of `{s}` must be unsigned"
                )));
            }
            parse_int(d, s)?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::input(format!("zero denominator in `{s}`")));
    }
    Ok(Rat::new(num, den))
}

fn parse_int(t: &str, whole: &str) -> Result<BigInt> {
    let digits = t.strip_prefix('-').unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::input(format!("invalid rational literal `{whole}`")));
    }
    t.parse::<BigInt>()
        .map_err(|_| Error::input(format!("invalid rational literal `{whole}`")))
}

pub fn min_of<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Option<Rat> {
    values.into_iter().min().cloned()
}

pub fn max_of<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Option<Rat> {
    values.into_iter().max().cloned()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x * y
        }
    })
}

pub fn is_nonneg(v: &[Rat]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
