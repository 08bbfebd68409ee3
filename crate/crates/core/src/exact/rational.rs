//! Exact rational scalars.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value
//! reduced with a positive denominator and represents zero as `0/1`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `n/d` as a [`Rational`]. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact square root when `r` is the square of a rational.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Parses `num` or `num/den` with optional sign. Floats are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Integer value of `r` as `i64` when it is integral and fits.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.to_integer()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_positive_denominator() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rat(0, -7), int(0));
        assert_eq!(int(0).denom(), &BigInt::from(1));
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_exact(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(sqrt_exact(&rat(2, 1)), None);
        assert_eq!(sqrt_exact(&rat(-1, 1)), None);
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
