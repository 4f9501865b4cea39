//! The individual certificate checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::surjectivity::{is_square_mod, two_division_has_root, Surjectivity, SurjectivityMethod};
use super::{
    mod_ell_surjectivity_with, CertificateKind, CheckOutcome, Coverage, OddCertificate,
    SurjectivityVerdict, TwoPrimary, Witness,
};
use crate::arith::{primes_up_to, valuation, Rational};
use crate::curves::{frobenius_table, is_cm_j, is_good_prime, CurveLW, FrobeniusTable};
use crate::error::{Error, Result};

/// Largest ℓ checked by the sampling routes unless told otherwise.
pub const DEFAULT_ELL_MAX: u64 = 37;
/// Largest p in the Frobenius tables unless told otherwise.
pub const DEFAULT_BOUND_B: u64 = 10_000;

fn negative_power_of_two(v: i64) -> Option<u32> {
    (v < 0 && (-v).count_ones() == 1).then(|| (-v).trailing_zeros())
}

fn inputs(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn witness(ell: Option<u64>, prime: Option<u64>, claim: String) -> Witness {
    Witness { ell, prime, claim }
}

fn tail_caveat(ell_max: u64) -> String {
    format!("checked only for primes ell <= {ell_max}; larger ell unverified")
}

/// `v₅(j) = −2^m` and `v₇(j) = −2^n`, with the witnesses or the reason.
fn valuation_conditions(curve: &CurveLW) -> std::result::Result<Vec<Witness>, String> {
    let j = curve.j_invariant();
    if j.is_zero() {
        return Err("j(E) = 0 is integral at 5 and 7".into());
    }
    let mut out = Vec::new();
    for p in [5, 7] {
        let v = valuation(&j, p).expect("nonzero j, prime p");
        match negative_power_of_two(v) {
            Some(_) => out.push(witness(None, Some(p), format!("v_{p}(j(E)) = {v}"))),
            None => return Err(format!("v_{p}(j(E)) = {v} is not of the form -2^m")),
        }
    }
    Ok(out)
}

/// `E` has potentially multiplicative reduction at 5 and 7 with
/// `v₅(j) = −2^m`, `v₇(j) = −2^n`, and `E'` has full rational 2-torsion
/// and good reduction at 5 and 7. Then `Hom_Γ(E_ℓ, E'_ℓ) = 0` for every
/// odd ℓ.
pub fn multiplicative_reduction_check(first: &CurveLW, second: &CurveLW) -> CheckOutcome {
    let mut witnesses = match valuation_conditions(first) {
        Ok(w) => w,
        Err(reason) => return CheckOutcome::Failure(reason),
    };
    if second.two_torsion_roots().is_err() {
        return CheckOutcome::Failure("E' does not have full rational 2-torsion".into());
    }
    for p in [5, 7] {
        if !is_good_prime(second, p) {
            return CheckOutcome::Failure(format!("E' does not have good reduction at {p}"));
        }
        witnesses.push(witness(
            None,
            Some(p),
            format!("E' has good reduction at {p}"),
        ));
    }
    CheckOutcome::Certificate(OddCertificate {
        kind: CertificateKind::MultiplicativeReduction,
        primes_covered: Coverage::AllOdd,
        two_primary: None,
        ell_max: None,
        inputs: inputs(&[("E", first.to_string()), ("E'", second.to_string())]),
        witnesses,
        caveats: Vec::new(),
    })
}

/// The same valuation conditions for `A = E × E`; they force
/// `End_Γ(E_ℓ)` to be scalars for every odd ℓ.
pub fn multiplicative_reduction_self_check(curve: &CurveLW) -> CheckOutcome {
    match valuation_conditions(curve) {
        Ok(witnesses) => CheckOutcome::Certificate(OddCertificate {
            kind: CertificateKind::MultiplicativeReduction,
            primes_covered: Coverage::AllOdd,
            two_primary: None,
            ell_max: None,
            inputs: inputs(&[("E", curve.to_string()), ("E'", "E".into())]),
            witnesses,
            caveats: Vec::new(),
        }),
        Err(reason) => CheckOutcome::Failure(reason),
    }
}

/// The divisibility conditions on `y² = x(x − a)(x − b)` that give
/// `v₅(j) = v₇(j) = −2`: exactly one of `a, b, a − b` divisible by 5,
/// exactly one by 7, none by 25 or 49.
pub fn family_conditions(a: &BigInt, b: &BigInt) -> std::result::Result<(), Vec<String>> {
    if a.is_zero() || b.is_zero() || a == b {
        return Err(vec![format!("(a, b) = ({a}, {b}) is degenerate")]);
    }
    let diff = a - b;
    let named = [("a", a), ("b", b), ("a - b", &diff)];
    let mut violations = Vec::new();
    for p in [5u32, 7] {
        let hits: Vec<&str> = named
            .iter()
            .filter(|(_, v)| v.is_multiple_of(&BigInt::from(p)))
            .map(|(n, _)| *n)
            .collect();
        if hits.len() != 1 {
            violations.push(format!("{} of a, b, a - b divisible by {p}", hits.len()));
        }
        let sq = BigInt::from(p * p);
        for (n, v) in &named {
            if v.is_multiple_of(&sq) {
                violations.push(format!("{} divides {n}", p * p));
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

fn surjectivity_witnesses(v: &SurjectivityVerdict) -> Vec<Witness> {
    match v.method {
        SurjectivityMethod::TwoDivisionCubic => vec![witness(
            Some(v.ell),
            None,
            "2-division cubic irreducible with nonsquare discriminant".into(),
        )],
        SurjectivityMethod::ThreeDivisionQuartic => vec![witness(
            Some(v.ell),
            None,
            "3-division polynomial has Galois group S4".into(),
        )],
        SurjectivityMethod::TraceSampling => v
            .witnesses
            .iter()
            .zip(["(i)", "(ii)", "(iii)"])
            .filter_map(|(p, label)| {
                p.map(|p| {
                    witness(
                        Some(v.ell),
                        Some(p),
                        format!("trace witness {label} at p = {p}"),
                    )
                })
            })
            .collect(),
    }
}

/// Runs the surjectivity test at every prime `ℓ <= ell_max` in `ells`;
/// returns the witnesses and the primes where it was inconclusive.
fn surjective_everywhere(
    curve: &CurveLW,
    ells: &[u64],
    table: &FrobeniusTable,
) -> Result<(Vec<Witness>, Vec<u64>)> {
    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    for &ell in ells {
        let v = mod_ell_surjectivity_with(curve, ell, table)?;
        if v.verdict == Surjectivity::Surjective {
            witnesses.extend(surjectivity_witnesses(&v));
        } else {
            missing.push(ell);
        }
    }
    Ok((witnesses, missing))
}

fn odd_primes_up_to(ell_max: u64) -> Vec<u64> {
    primes_up_to(ell_max)
        .into_iter()
        .filter(|&l| l > 2)
        .collect()
}

/// `E` surjective mod ℓ for all `ℓ <= ell_max`, `E'` with CM and a rational
/// point of order 6. Then `Br(Ā)^Γ = 0`, up to the unsampled ℓ.
pub fn cm_six_torsion_check(
    first: &CurveLW,
    cm_curve: &CurveLW,
    point: (Rational, Rational),
    ell_max: u64,
    bound: u64,
) -> Result<CheckOutcome> {
    let pt = cm_curve.point(point.0.clone(), point.1.clone())?;
    let j = cm_curve.j_invariant();
    if !is_cm_j(&j) {
        return Ok(CheckOutcome::Failure(format!("E' has no CM: j = {j}")));
    }
    match cm_curve.order_up_to(&pt, 12) {
        Some(6) => {}
        Some(n) => return Ok(CheckOutcome::Failure(format!("point has order {n}, not 6"))),
        None => return Ok(CheckOutcome::Failure("point has infinite order".into())),
    }
    let table = frobenius_table(first, bound);
    let ells = primes_up_to(ell_max);
    let (mut witnesses, missing) = surjective_everywhere(first, &ells, &table)?;
    if !missing.is_empty() {
        return Ok(CheckOutcome::Failure(format!(
            "surjectivity of E not confirmed for ell in {missing:?}"
        )));
    }
    witnesses.push(witness(
        None,
        None,
        format!("({}, {}) has order 6 on E'", point.0, point.1),
    ));
    Ok(CheckOutcome::Certificate(OddCertificate {
        kind: CertificateKind::CmSixTorsion,
        primes_covered: Coverage::Primes(odd_primes_up_to(ell_max)),
        two_primary: Some(TwoPrimary::Vanishes),
        ell_max: Some(ell_max),
        inputs: inputs(&[
            ("E", first.to_string()),
            ("E'", cm_curve.to_string()),
            ("bound_B", bound.to_string()),
        ]),
        witnesses,
        caveats: vec![tail_caveat(ell_max)],
    }))
}

/// `E` surjective mod ℓ for every odd `ℓ <= ell_max`, for `A = E × E`.
/// With `include_two` the exact test at ℓ = 2 is added, which makes the
/// 2-primary part of `Br(A)` algebraic.
pub fn surjectivity_check(
    curve: &CurveLW,
    ell_max: u64,
    bound: u64,
    include_two: bool,
) -> Result<CheckOutcome> {
    let table = frobenius_table(curve, bound);
    let ells: Vec<u64> = primes_up_to(ell_max)
        .into_iter()
        .filter(|&l| include_two || l > 2)
        .collect();
    let (witnesses, missing) = surjective_everywhere(curve, &ells, &table)?;
    if !missing.is_empty() {
        return Ok(CheckOutcome::Failure(format!(
            "surjectivity not confirmed for ell in {missing:?}"
        )));
    }
    Ok(CheckOutcome::Certificate(OddCertificate {
        kind: CertificateKind::SurjectivitySampling,
        primes_covered: Coverage::Primes(odd_primes_up_to(ell_max)),
        two_primary: (include_two && ell_max >= 2).then_some(TwoPrimary::Algebraic),
        ell_max: Some(ell_max),
        inputs: inputs(&[
            ("E", curve.to_string()),
            ("E'", "E".into()),
            ("bound_B", bound.to_string()),
        ]),
        witnesses,
        caveats: vec![tail_caveat(ell_max)],
    }))
}

/// Smallest good `p <= B`, `p ≠ ℓ`, with `x² − a_p x + p` irreducible mod ℓ.
/// Frobenius at such `p` has no eigenvalue in `F_ℓ`, so `E_ℓ` has no
/// Galois-stable line.
pub fn no_rational_ell_isogeny(curve: &CurveLW, ell: u64, bound: u64) -> Option<u64> {
    no_rational_ell_isogeny_in(&frobenius_table(curve, bound), ell)
}

/// [`no_rational_ell_isogeny`] over a precomputed table.
pub fn no_rational_ell_isogeny_in(table: &FrobeniusTable, ell: u64) -> Option<u64> {
    table.iter().find_map(|(p, ap)| {
        if p == ell {
            return None;
        }
        let disc = (ap as i128 * ap as i128 - 4 * p as i128).rem_euclid(ell as i128) as u64;
        (!is_square_mod(disc, ell)).then_some(p)
    })
}

/// For a CM curve `E` and `A = E × E`: covers exactly the ℓ in `ells` for
/// which [`no_rational_ell_isogeny`] finds a witness.
pub fn cm_no_isogeny_certificate(
    curve: &CurveLW,
    ells: &[u64],
    bound: u64,
) -> Result<OddCertificate> {
    let j = curve.j_invariant();
    if !is_cm_j(&j) {
        return Err(Error::NotCm(j.to_string()));
    }
    for &ell in ells {
        if ell == 2 {
            return Err(Error::UnsupportedPrime(2));
        }
        if !crate::arith::is_prime_u64(ell) {
            return Err(Error::NotPrime(ell.into()));
        }
    }
    let table = frobenius_table(curve, bound);
    let mut covered = Vec::new();
    let mut missing = Vec::new();
    let mut witnesses = Vec::new();
    for &ell in ells {
        match no_rational_ell_isogeny_in(&table, ell) {
            Some(p) => {
                let ap = table.get(p).expect("from table");
                covered.push(ell);
                witnesses.push(witness(
                    Some(ell),
                    Some(p),
                    format!("x^2 - ({ap})x + {p} irreducible mod {ell}"),
                ));
            }
            None => missing.push(ell),
        }
    }
    let mut caveats = Vec::new();
    if !missing.is_empty() {
        caveats.push(format!(
            "no witness for ell in {missing:?} with B = {bound}"
        ));
    }
    Ok(OddCertificate {
        kind: CertificateKind::CmNoIsogeny,
        primes_covered: Coverage::Primes(covered),
        two_primary: None,
        ell_max: ells.iter().max().copied(),
        inputs: inputs(&[
            ("E", curve.to_string()),
            ("E'", "E".into()),
            ("bound_B", bound.to_string()),
        ]),
        witnesses,
        caveats,
    })
}

/// Smallest good `p`, common to both tables and different from ℓ, with
/// `a_p(E) ≢ a_p(E') mod ℓ`.
fn trace_mismatch(t1: &FrobeniusTable, t2: &FrobeniusTable, ell: u64) -> Option<(u64, i64, i64)> {
    t1.iter().find_map(|(p, a)| {
        let b = t2.get(p)?;
        (p != ell && (a - b).rem_euclid(ell as i64) != 0).then_some((p, a, b))
    })
}

/// For non-isogenous `E`, `E'`: at every prime `ℓ <= ell_max` one of the
/// curves has irreducible `E_ℓ` and the traces differ mod ℓ somewhere, so
/// `Hom_Γ(E_ℓ, E'_ℓ) = 0`. Covers ℓ = 2 as well.
pub fn non_exceptional_pair_check(
    first: &CurveLW,
    second: &CurveLW,
    ell_max: u64,
    bound: u64,
) -> Result<CheckOutcome> {
    let t1 = frobenius_table(first, bound);
    let t2 = frobenius_table(second, bound);
    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    for ell in primes_up_to(ell_max) {
        let irreducible = if ell == 2 {
            [(first, "E"), (second, "E'")]
                .into_iter()
                .find(|(c, _)| !two_division_has_root(c))
                .map(|(_, name)| {
                    witness(
                        Some(2),
                        None,
                        format!("{name} has no rational 2-torsion point"),
                    )
                })
        } else {
            [(&t1, "E"), (&t2, "E'")].into_iter().find_map(|(t, name)| {
                no_rational_ell_isogeny_in(t, ell).map(|p| {
                    witness(
                        Some(ell),
                        Some(p),
                        format!("Frobenius of {name} at {p} has no eigenvalue mod {ell}"),
                    )
                })
            })
        };
        let mismatch = trace_mismatch(&t1, &t2, ell).map(|(p, a, b)| {
            witness(
                Some(ell),
                Some(p),
                format!("a_{p}(E) = {a} and a_{p}(E') = {b} differ mod {ell}"),
            )
        });
        match (irreducible, mismatch) {
            (Some(w1), Some(w2)) => {
                witnesses.push(w1);
                witnesses.push(w2);
            }
            _ => missing.push(ell),
        }
    }
    if !missing.is_empty() {
        return Ok(CheckOutcome::Failure(format!(
            "Hom(E_ell, E'_ell) = 0 not confirmed for ell in {missing:?}"
        )));
    }
    Ok(CheckOutcome::Certificate(OddCertificate {
        kind: CertificateKind::NonExceptionalSampling,
        primes_covered: Coverage::Primes(odd_primes_up_to(ell_max)),
        two_primary: (ell_max >= 2).then_some(TwoPrimary::Vanishes),
        ell_max: Some(ell_max),
        inputs: inputs(&[
            ("E", first.to_string()),
            ("E'", second.to_string()),
            ("bound_B", bound.to_string()),
        ]),
        witnesses,
        caveats: vec![tail_caveat(ell_max)],
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "result")]
pub enum Congruence {
    Pass {
        primes_checked: usize,
    },
    Fail {
        prime: u64,
        a_p: i64,
        a_p_prime: i64,
    },
}

/// `a_p(E) ≡ a_p(E') mod ℓ` at every `p <= B`, `p ≠ ℓ`, good for both.
/// Necessary for `E_ℓ ≅ E'_ℓ`; evidence only.
pub fn congruence_evidence(first: &CurveLW, second: &CurveLW, ell: u64, bound: u64) -> Congruence {
    let t1 = frobenius_table(first, bound);
    let t2 = frobenius_table(second, bound);
    if let Some((prime, a_p, a_p_prime)) = trace_mismatch(&t1, &t2, ell) {
        return Congruence::Fail {
            prime,
            a_p,
            a_p_prime,
        };
    }
    let primes_checked = t1
        .iter()
        .filter(|&(p, _)| p != ell && t2.get(p).is_some())
        .count();
    Congruence::Pass { primes_checked }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::curves::CurveRT2;

    fn lw(c: [i64; 5]) -> CurveLW {
        CurveLW::from_ints(c).unwrap()
    }

    fn rt2(a: i64, b: i64) -> CurveLW {
        CurveRT2::new(a, b).unwrap().to_lw()
    }

    #[test]
    fn multiplicative_reduction_examples() {
        assert!(multiplicative_reduction_check(&rt2(5, 7), &rt2(1, 2)).is_certificate());
        assert!(multiplicative_reduction_check(&rt2(40, 7), &rt2(36, 37)).is_certificate());
        match multiplicative_reduction_check(&rt2(1, 2), &rt2(5, 7)) {
            CheckOutcome::Failure(r) => assert!(r.contains("v_5(j(E)) = 0"), "{r}"),
            other => panic!("{other:?}"),
        }
        // E' bad at 5
        assert!(!multiplicative_reduction_check(&rt2(5, 7), &rt2(5, 7)).is_certificate());
        assert!(multiplicative_reduction_self_check(&rt2(5, 7)).is_certificate());
    }

    #[test]
    fn family_condition_examples() {
        let i = BigInt::from;
        assert_eq!(family_conditions(&i(5), &i(7)), Ok(()));
        assert_eq!(family_conditions(&i(5), &i(12)), Ok(()));
        let v = family_conditions(&i(25), &i(7)).unwrap_err();
        assert!(v.contains(&"25 divides a".to_string()), "{v:?}");
        assert!(family_conditions(&i(1), &i(2)).is_err());
        for (a, b) in [(5, 7), (5, 12)] {
            let j = CurveRT2::new(a, b).unwrap().j_invariant();
            assert_eq!(valuation(&j, 5), Ok(-2));
            assert_eq!(valuation(&j, 7), Ok(-2));
        }
    }

    #[test]
    fn six_torsion_failures() {
        let e = lw([0, 0, 0, 6, -2]);
        let cm = lw([0, 0, 0, 0, 1]);
        let out = cm_six_torsion_check(&e, &cm, (rat(0), rat(1)), 13, 1000).unwrap();
        assert_eq!(
            out,
            CheckOutcome::Failure("point has order 3, not 6".into())
        );
        let out = cm_six_torsion_check(&cm, &e, (rat(1), rat(2)), 13, 1000);
        assert!(out.is_err() || !out.unwrap().is_certificate());
        assert!(matches!(
            cm_six_torsion_check(&e, &cm, (rat(1), rat(1)), 13, 1000),
            Err(Error::PointNotOnCurve { .. })
        ));
    }

    #[test]
    fn isogeny_witnesses_for_x3_minus_x() {
        let e = lw([0, 0, 0, -1, 0]);
        assert_eq!(no_rational_ell_isogeny(&e, 3, 50), Some(5));
        assert_eq!(no_rational_ell_isogeny(&e, 7, 50), Some(5));
    }

    #[test]
    fn rational_three_torsion_blocks_witness() {
        let e = lw([0, 0, 0, 0, -1]);
        assert_eq!(no_rational_ell_isogeny(&e, 3, 2000), None);
        let cert = cm_no_isogeny_certificate(&e, &[3, 5, 7], 200).unwrap();
        assert_eq!(cert.primes_covered, Coverage::Primes(vec![5, 7]));
        assert!(matches!(
            cm_no_isogeny_certificate(&lw([0, 0, 1, -1, 0]), &[3], 200),
            Err(Error::NotCm(_))
        ));
    }

    #[test]
    fn congruences() {
        let e = lw([0, 0, 1, -1, 0]);
        let f = lw([0, 1, 1, 0, 0]);
        assert!(matches!(
            congruence_evidence(&e, &e, 5, 100),
            Congruence::Pass { .. }
        ));
        assert_eq!(
            congruence_evidence(&e, &f, 2, 10),
            Congruence::Fail {
                prime: 3,
                a_p: -3,
                a_p_prime: -2
            }
        );
        let g = rt2(3, 4);
        let twist = rt2(-3, -4);
        assert!(matches!(
            congruence_evidence(&g, &twist, 2, 50),
            Congruence::Pass { .. }
        ));
    }

    #[test]
    fn conductor_37_43_pair_is_non_exceptional_up_to_37() {
        let e = lw([0, 0, 1, -1, 0]);
        let f = lw([0, 1, 1, 0, 0]);
        let out = non_exceptional_pair_check(&e, &f, 37, 2000).unwrap();
        assert!(out.is_certificate(), "{out:?}");
    }
}
