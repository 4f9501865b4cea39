use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::is_prime;
use crate::error::{Error, Result};

/// Exact rationals: reduced, with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Formats as `"n"` or `"n/d"`, the inverse of [`parse_rational`].
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn int_valuation(n: &BigInt, p: &BigUint) -> i64 {
    let p = BigInt::from(p.clone());
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// The p-adic valuation of a nonzero rational.
pub fn valuation(x: &Rational, p: u64) -> Result<i64> {
    valuation_big(x, &BigUint::from(p))
}

pub fn valuation_big(x: &Rational, p: &BigUint) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(int_valuation(x.numer(), p) - int_valuation(x.denom(), p))
}

/// Reduces a p-integral rational modulo the prime `p`.
pub fn reduce_mod(x: &Rational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let den = x.denom().mod_floor(&pb);
    if den.is_zero() {
        return Err(Error::NotIntegral { p });
    }
    let num = x.numer().mod_floor(&pb).to_u64().unwrap_or(0);
    let den = den.to_u64().unwrap_or(1);
    Ok(mul_mod(num, inv_mod(den, p), p))
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime, by Fermat.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Exact square root of a nonnegative rational, if it is a square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&rat(48), 2), Ok(4));
        assert_eq!(valuation(&rat(5), 3), Ok(0));
        // j-invariant of y² = x(x-5)(x-7)
        assert_eq!(valuation(&ratio(3796416, 1225), 5), Ok(-2));
        assert_eq!(valuation(&ratio(3796416, 1225), 7), Ok(-2));
    }

    #[test]
    fn valuation_errors() {
        assert_eq!(valuation(&rat(0), 5), Err(Error::ZeroInput));
        assert_eq!(
            valuation(&rat(12), 6),
            Err(Error::NotPrime(BigUint::from(6u32)))
        );
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational(" -6/4 ").unwrap(), ratio(-3, 2));
        assert_eq!(format_rational(&ratio(-3, 2)), "-3/2");
        assert_eq!(format_rational(&rat(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn reduction_mod_p() {
        assert_eq!(reduce_mod(&ratio(1, 2), 7), Ok(4));
        assert_eq!(reduce_mod(&rat(-1), 5), Ok(4));
        assert_eq!(
            reduce_mod(&ratio(1, 5), 5),
            Err(Error::NotIntegral { p: 5 })
        );
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&rat(2)), None);
        assert_eq!(rational_sqrt(&rat(-4)), None);
    }
}
