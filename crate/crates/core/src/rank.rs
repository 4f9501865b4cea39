//! The rank `r` of `Hom(Ē, Ē')` and the gate deciding whether `d − r`
//! computes the 2-torsion of the transcendental Brauer group.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{primes_up_to, valuation};
use crate::curves::{
    count_points, count_points_naive, is_cm_j, is_good_prime, trace_of_frobenius, CurveLW,
};
use crate::error::{Error, Result};

/// Which of the three cases allowing `Br₁(X) = Br(Q)` holds, if any.
/// The CM case needs a Galois cohomology vanishing this crate does not
/// check, so it never appears.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gate {
    NonIsogenous,
    SameCurveWithoutCm,
    None,
}

impl Gate {
    pub fn passes(self) -> bool {
        self != Gate::None
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gate::NonIsogenous => "non-isogenous",
            Gate::SameCurveWithoutCm => "same-curve-without-cm",
            Gate::None => "none",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceKind {
    TraceSquareMismatch,
    ReductionTypeMismatch,
    SameCurve,
    NoneFound,
}

/// Data behind a non-isogeny (or equality) claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsogenyEvidence {
    pub kind: EvidenceKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl IsogenyEvidence {
    fn bare(kind: EvidenceKind) -> Self {
        Self {
            kind,
            prime: None,
            detail: None,
        }
    }

    pub fn is_certificate(&self) -> bool {
        matches!(
            self.kind,
            EvidenceKind::TraceSquareMismatch | EvidenceKind::ReductionTypeMismatch
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Confidence {
    Certified,
    Heuristic,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankVerdict {
    pub r: Option<usize>,
    pub confidence: Confidence,
    pub gate: Gate,
    pub evidence: IsogenyEvidence,
}

fn has_potentially_multiplicative_reduction(curve: &CurveLW, p: u64) -> bool {
    let j = curve.j_invariant();
    matches!(valuation(&j, p), Ok(v) if v < 0)
}

fn reduction_mismatch(first: &CurveLW, second: &CurveLW, p: u64) -> Option<String> {
    if has_potentially_multiplicative_reduction(first, p) && is_good_prime(second, p) {
        return Some(format!("v_{p}(j(E)) < 0 and E' has good reduction at {p}"));
    }
    if has_potentially_multiplicative_reduction(second, p) && is_good_prime(first, p) {
        return Some(format!("v_{p}(j(E')) < 0 and E has good reduction at {p}"));
    }
    None
}

/// Searches primes `p <= bound` in increasing order for a proof that `E`
/// and `E'` are not isogenous over Q̄.
///
/// Over Q̄-isogenous curves without CM differ by a quadratic twist after an
/// isogeny, so `a_p(E)² = a_p(E')²` at common good primes; a mismatch is
/// used only when at least one curve has a non-CM j-invariant. Potentially
/// multiplicative reduction is an isogeny invariant, which gives the second
/// kind of witness.
pub fn nonisogeny_certificate(
    first: &CurveLW,
    second: &CurveLW,
    bound: u64,
) -> Result<IsogenyEvidence> {
    if bound < 10 {
        return Err(Error::InvalidBound(format!(
            "non-isogeny search needs B >= 10, got {bound}"
        )));
    }
    let traces_usable = !is_cm_j(&first.j_invariant()) || !is_cm_j(&second.j_invariant());
    for p in primes_up_to(bound) {
        if traces_usable && is_good_prime(first, p) && is_good_prime(second, p) {
            let ap = trace_of_frobenius(first, p)?;
            let aq = trace_of_frobenius(second, p)?;
            if ap * ap != aq * aq {
                verify_counts(first, second, p)?;
                return Ok(IsogenyEvidence {
                    kind: EvidenceKind::TraceSquareMismatch,
                    prime: Some(p),
                    detail: Some(format!("a_{p}(E) = {ap}, a_{p}(E') = {aq}")),
                });
            }
        }
        if let Some(detail) = reduction_mismatch(first, second, p) {
            return Ok(IsogenyEvidence {
                kind: EvidenceKind::ReductionTypeMismatch,
                prime: Some(p),
                detail: Some(detail),
            });
        }
    }
    Ok(IsogenyEvidence::bare(EvidenceKind::NoneFound))
}

fn verify_counts(first: &CurveLW, second: &CurveLW, p: u64) -> Result<()> {
    for curve in [first, second] {
        if count_points(curve, p)? != count_points_naive(curve, p)? {
            return Err(Error::Degenerate(format!(
                "point counts disagree for {curve} at p = {p}"
            )));
        }
    }
    Ok(())
}

/// Equal j-invariants and equal models, compared after moving both to the
/// canonical two-torsion form when that exists.
pub fn same_curve(first: &CurveLW, second: &CurveLW) -> bool {
    if first.j_invariant() != second.j_invariant() {
        return false;
    }
    if first == second {
        return true;
    }
    matches!((first.to_rt2(), second.to_rt2()), (Ok(x), Ok(y)) if x == y)
}

/// Grades `r` together with the gate under which `d − r` applies.
pub fn rank_r(first: &CurveLW, second: &CurveLW, bound: u64) -> Result<RankVerdict> {
    if bound < 10 {
        return Err(Error::InvalidBound(format!(
            "rank search needs B >= 10, got {bound}"
        )));
    }
    if same_curve(first, second) {
        let evidence = IsogenyEvidence {
            kind: EvidenceKind::SameCurve,
            prime: None,
            detail: Some(format!("j = {}", first.j_invariant())),
        };
        return Ok(if is_cm_j(&first.j_invariant()) {
            RankVerdict {
                r: Some(2),
                confidence: Confidence::Inconclusive,
                gate: Gate::None,
                evidence,
            }
        } else {
            RankVerdict {
                r: Some(1),
                confidence: Confidence::Heuristic,
                gate: Gate::SameCurveWithoutCm,
                evidence,
            }
        });
    }
    let evidence = nonisogeny_certificate(first, second, bound)?;
    Ok(if evidence.is_certificate() {
        RankVerdict {
            r: Some(0),
            confidence: Confidence::Certified,
            gate: Gate::NonIsogenous,
            evidence,
        }
    } else {
        RankVerdict {
            r: None,
            confidence: Confidence::Inconclusive,
            gate: Gate::None,
            evidence,
        }
    })
}
