//! Deterministic enumeration of the `a = 5 + 35m`, `b = 7 + 35n` family.

use num_bigint::BigInt;
use num_integer::Integer;

use super::{CurvePairSpec, CurveRecord};
use crate::certificates::family_conditions;

fn coprime_to_35(v: i64) -> bool {
    v.gcd(&35) == 1
}

/// The first `count` members, walking `(m, n)` along anti-diagonals
/// `m + n = 0, 1, 2, …` and skipping `m ≡ 2 (mod 5)`, `n ≡ 4 (mod 7)`. The
/// second curve uses `a' = 35m' + 1`, `b' = 35m' + 2` with `m' = m + seed`.
pub fn search_family(count: usize, seed: i64) -> Vec<CurvePairSpec> {
    let mut out = Vec::with_capacity(count);
    let mut s = 0i64;
    while out.len() < count {
        for m in 0..=s {
            if out.len() == count {
                break;
            }
            let n = s - m;
            if m % 5 == 2 || n % 7 == 4 {
                continue;
            }
            let (a, b) = (5 + 35 * m, 7 + 35 * n);
            let mp = m + seed;
            let (a2, b2) = (35 * mp + 1, 35 * mp + 2);
            if family_conditions(&BigInt::from(a), &BigInt::from(b)).is_err()
                || ![a2, b2, a2 - b2].iter().all(|&v| coprime_to_35(v))
            {
                continue;
            }
            let mut spec = CurvePairSpec::new(CurveRecord::rt2(a, b), CurveRecord::rt2(a2, b2));
            spec.labels = Some([format!("E({a},{b})"), format!("E'({a2},{b2})")]);
            out.push(spec);
        }
        s += 1;
    }
    out
}
