//! Exact rationals. Every coefficient in the kernel is a `BigRational`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{QcaError, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// `p/q`; panics on `q == 0`.
pub fn frac(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn sign(s: i8) -> Scalar {
    int(s as i64)
}

/// Parses `"3"`, `"-3/2"` or `"+7/4"`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    let bad = || QcaError::Parse {
        pos: 0,
        msg: format!("not a rational number: {s:?}"),
    };
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| bad())?;
    let q: BigInt = den.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Canonical text: `"3"`, `"-3/2"`.
pub fn fmt_scalar(s: &Scalar) -> String {
    s.to_string()
}

pub fn is_negative(s: &Scalar) -> bool {
    s.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_scalar("6/4").unwrap(), frac(3, 2));
        assert_eq!(fmt_scalar(&frac(-6, 4)), "-3/2");
        assert_eq!(fmt_scalar(&int(5)), "5");
        assert_eq!(parse_scalar(" -2 ").unwrap(), int(-2));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }
}
