use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::factor::factor;
use super::rational::Rational;
use crate::error::{Error, Result};

/// An element of Q*/Q*², stored as a sign and the sorted prime support of
/// its squarefree representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SquareClass {
    negative: bool,
    support: Vec<BigUint>,
}

impl SquareClass {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds a class from a sign and a list of primes; repeated primes cancel.
    pub fn from_parts(negative: bool, primes: impl IntoIterator<Item = BigUint>) -> Self {
        let mut support: Vec<BigUint> = primes.into_iter().collect();
        support.sort();
        let mut out: Vec<BigUint> = Vec::with_capacity(support.len());
        for p in support {
            if out.last() == Some(&p) {
                out.pop();
            } else {
                out.push(p);
            }
        }
        Self {
            negative,
            support: out,
        }
    }

    pub fn of_integer(n: &BigInt) -> Result<Self> {
        let f = factor(n)?;
        Ok(Self {
            negative: f.sign() < 0,
            support: f
                .factors()
                .iter()
                .filter(|(_, e)| e % 2 == 1)
                .map(|(p, _)| p.clone())
                .collect(),
        })
    }

    pub fn of_i64(n: i64) -> Result<Self> {
        Self::of_integer(&BigInt::from(n))
    }

    /// The class of a nonzero rational; `n/d` has the class of `n·d`.
    pub fn of_rational(x: &Rational) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(&Self::of_integer(x.numer())? * &Self::of_integer(x.denom())?)
    }

    pub fn is_identity(&self) -> bool {
        !self.negative && self.support.is_empty()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn support(&self) -> &[BigUint] {
        &self.support
    }

    /// The squarefree integer representing this class.
    pub fn representative(&self) -> BigInt {
        let mag = self.support.iter().fold(BigUint::one(), |acc, p| acc * p);
        let v = BigInt::from(mag);
        if self.negative {
            -v
        } else {
            v
        }
    }
}

impl Mul for &SquareClass {
    type Output = SquareClass;

    fn mul(self, rhs: &SquareClass) -> SquareClass {
        // symmetric difference of two sorted lists
        let (a, b) = (&self.support, &rhs.support);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        SquareClass {
            negative: self.negative != rhs.negative,
            support: out,
        }
    }
}

impl Mul for SquareClass {
    type Output = SquareClass;

    fn mul(self, rhs: SquareClass) -> SquareClass {
        &self * &rhs
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative())
    }
}

impl FromStr for SquareClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n = BigInt::from_str(s.trim())
            .map_err(|_| Error::Parse(format!("not a square class: {s:?}")))?;
        if n.is_zero() {
            return Err(Error::ZeroInput);
        }
        let class = Self::of_integer(&n)?;
        if class.representative().abs() != n.abs() {
            return Err(Error::Parse(format!("{s} is not squarefree")));
        }
        Ok(class)
    }
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SquareClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
