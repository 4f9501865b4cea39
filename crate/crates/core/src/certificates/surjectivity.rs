//! Surjectivity of the mod-ℓ Galois representation: exact at ℓ = 2 and
//! ℓ = 3 from division polynomials, one-sided trace sampling for ℓ ≥ 5.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factor, is_prime_u64, rat, rational_sqrt, Rational};
use crate::curves::{frobenius_table, CurveLW, FrobeniusTable};
use crate::error::{Error, Result};

/// Recorded in every verdict: the mod-ℓ determinant is the cyclotomic
/// character, hence onto `F_ℓ*`.
pub const DETERMINANT_ASSUMPTION: &str =
    "determinant of the mod-ell representation is the cyclotomic character, hence onto";

pub(crate) fn is_square_mod(x: u64, ell: u64) -> bool {
    (0..ell).any(|y| y * y % ell == x % ell)
}

/// Which of the three witness conditions `(trace, det)` meets in `F_ℓ`:
/// 1. `t ≠ 0` and `t² − 4d` a nonsquare;
/// 2. `t ≠ 0` and `t² − 4d` a nonzero square;
/// 3. `u = t²/d` avoids `{0, 1, 2, 4}` and the roots of `u² − 3u + 1`.
pub fn witness_types(t: u64, d: u64, ell: u64) -> [bool; 3] {
    let (t, d) = (t % ell, d % ell);
    if d == 0 {
        return [false; 3];
    }
    let disc = (t * t % ell + ell * 4 - 4 * d % ell) % ell;
    let first = t != 0 && !is_square_mod(disc, ell);
    let second = t != 0 && disc != 0 && is_square_mod(disc, ell);
    let d_inv = (1..ell).find(|k| d * k % ell == 1).unwrap_or(0);
    let u = t * t % ell * d_inv % ell;
    let third = ![0, 1, 2, 4].iter().any(|&e| u == e % ell)
        && !(u * u + 1 + 3 * (ell - u)).is_multiple_of(ell);
    [first, second, third]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Surjectivity {
    Surjective,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurjectivityMethod {
    /// Galois group of the 2-division cubic.
    TwoDivisionCubic,
    /// Galois group of the 3-division quartic.
    ThreeDivisionQuartic,
    TraceSampling,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurjectivityVerdict {
    pub ell: u64,
    pub verdict: Surjectivity,
    pub method: SurjectivityMethod,
    /// Smallest primes meeting each witness condition, in order. Empty for
    /// the exact methods.
    pub witnesses: Vec<Option<u64>>,
    pub bound: u64,
    pub assumption: String,
}

/// Some rational root of a monic polynomial with rational coefficients,
/// given from the top coefficient down (the leading 1 omitted).
pub(crate) fn rational_root(coeffs: &[Rational]) -> Option<Rational> {
    let n = coeffs.len();
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let dq = Rational::from_integer(den);
    // x = X / D makes the polynomial monic with integer coefficients.
    let ints: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| (c * dq.pow(k as i32 + 1)).to_integer())
        .collect();
    let eval = |x: &BigInt| ints.iter().fold(BigInt::one(), |acc, c| acc * x + c);
    let constant = &ints[n - 1];
    let root = if constant.is_zero() {
        Some(BigInt::zero())
    } else {
        factor(constant)
            .expect("nonzero")
            .divisors()
            .into_iter()
            .map(BigInt::from)
            .flat_map(|v| [v.clone(), -v])
            .find(|x| eval(x).is_zero())
    }?;
    Some(Rational::from_integer(root) / dq)
}

/// `y³ + py² + qy + r`.
fn cubic_discriminant(p: &Rational, q: &Rational, r: &Rational) -> Rational {
    p * p * q * q - rat(4) * q * q * q - rat(4) * p * p * p * r - rat(27) * r * r
        + rat(18) * p * q * r
}

/// Whether the 2-division cubic has a rational root, i.e. `E(Q)` has a
/// point of order 2.
pub(crate) fn two_division_has_root(curve: &CurveLW) -> bool {
    let [c3, c2, c1, c0] = curve.two_division_cubic();
    rational_root(&[&c2 / &c3, &c1 / &c3, &c0 / &c3]).is_some()
}

/// Galois group S₃: the 2-division cubic is irreducible with nonsquare
/// discriminant.
pub fn two_adic_image_is_full(curve: &CurveLW) -> bool {
    let [c3, c2, c1, c0] = curve.two_division_cubic();
    let monic = [&c2 / &c3, &c1 / &c3, &c0 / &c3];
    if rational_root(&monic).is_some() {
        return false;
    }
    rational_sqrt(&cubic_discriminant(&monic[0], &monic[1], &monic[2])).is_none()
}

/// Galois group S₄ for the 3-division polynomial
/// `3x⁴ + b2x³ + 3b4x² + 3b6x + b8`, whose roots are the x-coordinates of
/// the four lines in `E[3]`.
pub fn three_adic_image_is_full(curve: &CurveLW) -> bool {
    let three = rat(3);
    let a = curve.b2() / &three;
    let b = curve.b4();
    let c = curve.b6();
    let d = curve.b8() / &three;
    if rational_root(&[a.clone(), b.clone(), c.clone(), d.clone()]).is_some() {
        return false;
    }
    // roots r1r2 + r3r4, r1r3 + r2r4, r1r4 + r2r3
    let p = -b.clone();
    let q = &a * &c - rat(4) * &d;
    let r = -(&a * &a * &d - rat(4) * &b * &d + &c * &c);
    if rational_root(&[p.clone(), q.clone(), r.clone()]).is_some() {
        return false;
    }
    rational_sqrt(&cubic_discriminant(&p, &q, &r)).is_none()
}

/// Decides or samples whether `Gal(Q̄/Q) → GL(2, F_ℓ)` is onto. Never
/// answers "not surjective": failure to confirm is inconclusive.
pub fn mod_ell_surjectivity(curve: &CurveLW, ell: u64, bound: u64) -> Result<SurjectivityVerdict> {
    if ell >= 5 {
        let table = frobenius_table(curve, bound);
        return mod_ell_surjectivity_with(curve, ell, &table);
    }
    let table = FrobeniusTable {
        curve: curve.to_string(),
        bound,
        traces: BTreeMap::new(),
    };
    mod_ell_surjectivity_with(curve, ell, &table)
}

/// As [`mod_ell_surjectivity`], reusing a precomputed trace table.
pub fn mod_ell_surjectivity_with(
    curve: &CurveLW,
    ell: u64,
    table: &FrobeniusTable,
) -> Result<SurjectivityVerdict> {
    if !is_prime_u64(ell) {
        return Err(Error::NotPrime(ell.into()));
    }
    let verdict = |full: bool| {
        if full {
            Surjectivity::Surjective
        } else {
            Surjectivity::Inconclusive
        }
    };
    let exact = |method, full| SurjectivityVerdict {
        ell,
        verdict: verdict(full),
        method,
        witnesses: Vec::new(),
        bound: table.bound,
        assumption: DETERMINANT_ASSUMPTION.to_string(),
    };
    match ell {
        2 => {
            return Ok(exact(
                SurjectivityMethod::TwoDivisionCubic,
                two_adic_image_is_full(curve),
            ))
        }
        3 => {
            return Ok(exact(
                SurjectivityMethod::ThreeDivisionQuartic,
                three_adic_image_is_full(curve),
            ))
        }
        _ => {}
    }
    let mut witnesses = [None; 3];
    let mut sampled = 0;
    for (p, ap) in table.iter().filter(|&(p, _)| p != ell) {
        sampled += 1;
        let t = ap.rem_euclid(ell as i64) as u64;
        for (slot, hit) in witnesses.iter_mut().zip(witness_types(t, p, ell)) {
            if hit && slot.is_none() {
                *slot = Some(p);
            }
        }
        if witnesses.iter().all(Option::is_some) {
            break;
        }
    }
    if sampled == 0 {
        return Err(Error::NoGoodPrime { bound: table.bound });
    }
    Ok(SurjectivityVerdict {
        ell,
        verdict: verdict(witnesses.iter().all(Option::is_some)),
        method: SurjectivityMethod::TraceSampling,
        witnesses: witnesses.to_vec(),
        bound: table.bound,
        assumption: DETERMINANT_ASSUMPTION.to_string(),
    })
}
