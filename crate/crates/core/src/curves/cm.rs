//! Complex multiplication over Q, decided by the class-number-one list of
//! j-invariants; supersingular frequencies are kept as corroborating data.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::count::frobenius_table;
use super::model::CurveLW;
use crate::arith::{format_rational, rat, Rational};
use crate::error::{Error, Result};

/// The thirteen j-invariants of elliptic curves over Q with CM.
pub const CM_J_INVARIANTS: [i64; 13] = [
    0,
    1728,
    -3375,
    8000,
    54000,
    287496,
    -32768,
    16581375,
    -884736,
    -12288000,
    -884736000,
    -147197952000,
    -262537412640768000,
];

/// Supersingular fraction a CM curve is expected to reach for `p <= 500`.
pub const CM_MIN_SUPERSINGULAR: f64 = 0.35;
/// Supersingular fraction a non-CM curve is expected to stay under.
pub const NON_CM_MAX_SUPERSINGULAR: f64 = 0.15;

pub fn is_cm_j(j: &Rational) -> bool {
    j.is_integer()
        && CM_J_INVARIANTS
            .iter()
            .any(|&c| *j.numer() == BigInt::from(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CmVerdict {
    Cm,
    NotCm,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CmStatus {
    pub verdict: CmVerdict,
    pub j: String,
    pub in_cm_list: bool,
    pub bound: u64,
    pub primes_sampled: usize,
    pub supersingular_fraction: f64,
}

/// Sample size below which the supersingular statistic is not allowed to
/// override the list.
const MIN_SAMPLE_FOR_OVERRIDE: usize = 30;

pub fn cm_status(curve: &CurveLW, bound: u64) -> Result<CmStatus> {
    if bound < 50 {
        return Err(Error::InvalidBound(format!(
            "CM statistics need a bound of at least 50, got {bound}"
        )));
    }
    let j = curve.j_invariant();
    let in_list = is_cm_j(&j);
    let table = frobenius_table(curve, bound);
    let frac = table.supersingular_fraction();
    let contradicted = table.len() >= MIN_SAMPLE_FOR_OVERRIDE
        && if in_list {
            frac < CM_MIN_SUPERSINGULAR / 2.0
        } else {
            frac > CM_MIN_SUPERSINGULAR
        };
    let verdict = match (in_list, contradicted) {
        (_, true) => CmVerdict::Unknown,
        (true, false) => CmVerdict::Cm,
        (false, false) => CmVerdict::NotCm,
    };
    Ok(CmStatus {
        verdict,
        j: format_rational(&j),
        in_cm_list: in_list,
        bound,
        primes_sampled: table.len(),
        supersingular_fraction: frac,
    })
}

/// An integral model with the given j-invariant.
pub fn curve_with_j(j: &Rational) -> CurveLW {
    if j.is_zero() {
        return CurveLW::from_ints([0, 0, 0, 0, 1]).expect("nonsingular");
    }
    if *j == rat(1728) {
        return CurveLW::from_ints([0, 0, 0, -1, 0]).expect("nonsingular");
    }
    // y² = x³ + 3j(1728 − j)x + 2j(1728 − j)²
    let k = j * (rat(1728) - j);
    let a4 = rat(3) * &k;
    let a6 = rat(2) * &k * (rat(1728) - j);
    CurveLW::short(a4, a6).expect("j differs from 0 and 1728")
}
