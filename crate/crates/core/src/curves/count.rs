//! Exhaustive point counting over prime fields and Frobenius trace tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::model::CurveLW;
use crate::arith::{is_prime_u64, mul_mod, primes_up_to, reduce_mod};
use crate::error::{Error, Result};

/// A model reduced modulo a prime of good reduction.
#[derive(Debug, Clone, Copy)]
struct Reduced {
    p: u64,
    a1: u64,
    a2: u64,
    a3: u64,
    a4: u64,
    a6: u64,
}

impl Reduced {
    fn new(curve: &CurveLW, p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p.into()));
        }
        if !curve.good_reduction_at(p)? {
            return Err(Error::BadReduction { p });
        }
        let [a1, a2, a3, a4, a6] = curve.coefficients().map(|c| reduce_mod(c, p));
        Ok(Self {
            p,
            a1: a1?,
            a2: a2?,
            a3: a3?,
            a4: a4?,
            a6: a6?,
        })
    }

    fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        let x2 = mul_mod(x, x, p);
        let x3 = mul_mod(x2, x, p);
        (x3 + mul_mod(self.a2, x2, p) + mul_mod(self.a4, x, p) + self.a6) % p
    }

    /// `a1·x + a3`
    fn linear(&self, x: u64) -> u64 {
        (mul_mod(self.a1, x, self.p) + self.a3) % self.p
    }
}

/// `#E(F_p)` including the point at infinity. For each `x` the equation
/// `y² + (a1x + a3)y − f(x) = 0` is solved as a quadratic in `y`; in
/// characteristic 2 both values of `y` are tried.
pub fn count_points(curve: &CurveLW, p: u64) -> Result<u64> {
    let r = Reduced::new(curve, p)?;
    if p == 2 {
        return Ok(count_by_exhaustion(&r));
    }
    if p >= 1 << 31 {
        return Err(Error::InvalidBound(format!(
            "point counting needs p < 2^31, got {p}"
        )));
    }
    let mut is_square = vec![false; p as usize];
    for y in 0..p {
        is_square[(y * y % p) as usize] = true;
    }
    // discriminant (a1x + a3)² + 4f(x) = x³·4 + b2·x² + 2b4·x + b6, by Horner
    let c2 = (r.a1 * r.a1 + 4 * r.a2) % p;
    let c1 = (2 * r.a1 * r.a3 + 4 * r.a4) % p;
    let c0 = (r.a3 * r.a3 + 4 * r.a6) % p;
    let mut n = 1u64;
    for x in 0..p {
        let disc = (((4 * x + c2) % p * x + c1) % p * x + c0) % p;
        n += if disc == 0 {
            1
        } else if is_square[disc as usize] {
            2
        } else {
            0
        };
    }
    Ok(n)
}

fn count_by_exhaustion(r: &Reduced) -> u64 {
    let p = r.p;
    let mut n = 1;
    for x in 0..p {
        let rhs = r.rhs(x);
        let l = r.linear(x);
        for y in 0..p {
            if (mul_mod(y, y, p) + mul_mod(l, y, p)) % p == rhs {
                n += 1;
            }
        }
    }
    n
}

/// Counts `#E(F_p)` by testing every pair `(x, y)`; quadratic in `p`.
pub fn count_points_naive(curve: &CurveLW, p: u64) -> Result<u64> {
    Ok(count_by_exhaustion(&Reduced::new(curve, p)?))
}

/// `a_p = p + 1 − #E(F_p)`.
pub fn trace_of_frobenius(curve: &CurveLW, p: u64) -> Result<i64> {
    Ok(p as i64 + 1 - count_points(curve, p)? as i64)
}

/// Whether `p` is a prime of good reduction for the model as given, with the
/// model `p`-integral.
pub fn is_good_prime(curve: &CurveLW, p: u64) -> bool {
    matches!(curve.good_reduction_at(p), Ok(true))
}

/// Frobenius traces over the good primes up to a bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusTable {
    pub curve: String,
    pub bound: u64,
    pub traces: BTreeMap<u64, i64>,
}

impl FrobeniusTable {
    pub fn get(&self, p: u64) -> Option<i64> {
        self.traces.get(&p).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.traces.iter().map(|(&p, &a)| (p, a))
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    /// Fraction of tabulated primes with `a_p = 0`.
    pub fn supersingular_fraction(&self) -> f64 {
        if self.traces.is_empty() {
            return 0.0;
        }
        let zeros = self.traces.values().filter(|&&a| a == 0).count();
        zeros as f64 / self.traces.len() as f64
    }
}

/// Traces `a_p` for every good prime `p <= bound`.
pub fn frobenius_table(curve: &CurveLW, bound: u64) -> FrobeniusTable {
    let traces = primes_up_to(bound)
        .into_iter()
        .filter(|&p| is_good_prime(curve, p))
        .map(|p| {
            let a = trace_of_frobenius(curve, p).expect("good prime");
            (p, a)
        })
        .collect();
    FrobeniusTable {
        curve: curve.to_string(),
        bound,
        traces,
    }
}

/// `|a_p| <= 2√p`, checked in integers as `a_p² <= 4p`.
pub fn within_hasse_bound(p: u64, a_p: i64) -> bool {
    (a_p as i128) * (a_p as i128) <= 4 * p as i128
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::CurveRT2;

    fn lw(c: [i64; 5]) -> CurveLW {
        CurveLW::from_ints(c).unwrap()
    }

    #[test]
    fn counts_on_x3_minus_x() {
        let e = lw([0, 0, 0, -1, 0]);
        assert_eq!(count_points(&e, 5), Ok(8));
        assert_eq!(count_points(&e, 7), Ok(8));
        assert_eq!(trace_of_frobenius(&e, 5), Ok(-2));
        assert_eq!(trace_of_frobenius(&e, 7), Ok(0));
    }

    #[test]
    fn counts_on_long_form() {
        let e = lw([0, 0, 1, -1, 0]);
        assert_eq!(count_points(&e, 3), Ok(7));
        assert_eq!(trace_of_frobenius(&e, 2), Ok(-2));
        let f = lw([0, 1, 1, 0, 0]);
        assert_eq!(trace_of_frobenius(&f, 3), Ok(-2));
    }

    #[test]
    fn bad_reduction_rejected() {
        let e = CurveRT2::new(1, 2).unwrap().to_lw();
        assert_eq!(count_points(&e, 2), Err(Error::BadReduction { p: 2 }));
    }

    #[test]
    fn tables() {
        let e = lw([0, 0, 0, -1, 0]);
        let t = frobenius_table(&e, 7);
        assert_eq!(t.traces, BTreeMap::from([(3, 0), (5, -2), (7, 0)]));
        assert!(frobenius_table(&e, 1).is_empty());
        let f = lw([0, 0, 1, -1, 0]);
        assert_eq!(
            frobenius_table(&f, 3).traces,
            BTreeMap::from([(2, -2), (3, -3)])
        );
    }
}
