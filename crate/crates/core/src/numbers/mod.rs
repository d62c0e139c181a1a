//! Exact scalar and dense-matrix arithmetic.
//!
//! Everything on a certified path is computed over arbitrary-precision
//! rationals. [`QuadExt`] adds the field ℚ(i, √m) (default m = 3) needed to
//! write irregularity witnesses exactly.

mod matrix;
mod quad;

pub use matrix::{OrthogonalityFailure, RatMatrix};
pub use quad::QuadExt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("ragged matrix rows")]
    Ragged,
}

/// Shorthand for the rational `num / den`.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, NumberError> {
    let t = s.trim();
    let err = || NumberError::Parse(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => t.parse::<BigInt>().map(Rational::from_integer).map_err(|_| err()),
    }
}

/// Least common multiple of the denominators, i.e. the smallest positive
/// integer that clears every fraction in `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Splits a positive integer into `f² · m` with `m` square-free; returns
/// `(f, m)`. Trial division, fine for the small values arising from
/// null-vector norms.
pub fn square_free_decomposition(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "square-free decomposition needs n > 0");
    let mut rest = n.clone();
    let mut f = BigInt::one();
    let mut m = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            f *= &p;
        }
        if e % 2 == 1 {
            m *= &p;
        }
        p += 1;
    }
    m *= rest;
    (f, m)
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-4, 2)), "-2");
        assert_eq!(format_rational(&rat(0, 5)), "0");
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), int(-7));
        assert_eq!(parse_rational("2/-4").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn canonical_form() {
        let r = rat(10, -4);
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rat(0, -3).denom(), &BigInt::one());
    }

    #[test]
    fn square_free_parts() {
        for (n, f, m) in [(1, 1, 1), (12, 2, 3), (18, 3, 2), (49, 7, 1), (30, 1, 30), (72, 6, 2)] {
            let (gf, gm) = square_free_decomposition(&BigInt::from(n));
            assert_eq!((gf, gm), (BigInt::from(f), BigInt::from(m)), "n = {n}");
        }
    }
}
