//! The full pipeline on a pair of curves, and its machine-readable report.

mod input;
mod render;
mod search;
mod validate;

use serde::{Deserialize, Serialize};

pub use input::{AnalysisOptions, CurvePairSpec, CurveRecord, Num};
pub use render::{render_report, Format};
pub use search::search_family;
pub use validate::validate_report;

use crate::arith::{primes_up_to, Rational};
use crate::certificates::{
    cm_no_isogeny_certificate, cm_six_torsion_check, congruence_evidence,
    multiplicative_reduction_check, multiplicative_reduction_self_check,
    non_exceptional_pair_check, surjectivity_check, CertificateKind, CheckOutcome, Congruence,
    Coverage, OddCertificate, TwoPrimary, Witness,
};
use crate::curves::{is_cm_j, CurveLW};
use crate::error::Result;
use crate::rank::{rank_r, same_curve, Confidence, Gate, IsogenyEvidence};
use crate::residue::{residue_matrix_for, surface_equation_for, Algebra, Brauer2Result, Dim2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    /// `Br(X) = Br(Q)`.
    Trivial,
    TwoPartNontrivial,
    OddPartOpen,
    Inconclusive,
}

impl Conclusion {
    pub fn as_str(self) -> &'static str {
        match self {
            Conclusion::Trivial => "trivial",
            Conclusion::TwoPartNontrivial => "two-part-nontrivial",
            Conclusion::OddPartOpen => "odd-part-open",
            Conclusion::Inconclusive => "inconclusive",
        }
    }
}

/// How much of the odd part of `Br(Ā)^Γ` the certificates kill.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum OddStatus {
    AllOdd,
    UpTo { ell_max: u64 },
    Open,
}

/// How the 2-primary part of `Br(X)/Br(Q)` was shown trivial, if it was.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoStatus {
    /// `d − r = 0` under a passing gate.
    Residues,
    /// A surjectivity or Hom-vanishing certificate at ℓ = 2.
    AbelianSurface,
    NotTrivial,
    Undetermined,
}

/// Whether the conclusion carries over to every twisted Kummer surface
/// `X^c`, which holds once `Br(Ā)^Γ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedFlag {
    pub set: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub basis: Option<CertificateKind>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub condition: Option<String>,
}

/// One odd-part strategy that was tried.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attempt {
    pub kind: CertificateKind,
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrauerReport {
    pub labels: [String; 2],
    pub curves: [String; 2],
    pub j_invariants: [String; 2],
    pub surface: String,
    /// `(a, b, a', b')` after moving each smallest 2-torsion root to zero.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residue_pair: Option<[String; 4]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matrix: Option<Vec<Vec<String>>>,
    pub d: Option<usize>,
    pub kernel_basis: Vec<Vec<Algebra>>,
    pub r: Option<usize>,
    pub r_confidence: Confidence,
    pub gate: Gate,
    pub isogeny_evidence: IsogenyEvidence,
    pub dim2: Dim2,
    pub certificates: Vec<OddCertificate>,
    pub attempts: Vec<Attempt>,
    pub witnesses: Vec<Witness>,
    pub two_part: TwoStatus,
    pub odd_part: OddStatus,
    pub twisted: TwistedFlag,
    pub conclusion: Conclusion,
    pub caveats: Vec<String>,
    pub options: AnalysisOptions,
}

fn push_unique(v: &mut Vec<String>, s: String) {
    if !v.contains(&s) {
        v.push(s);
    }
}

fn odd_primes_up_to(ell_max: u64) -> Vec<u64> {
    primes_up_to(ell_max)
        .into_iter()
        .filter(|&l| l > 2)
        .collect()
}

/// Odd-part status implied by a list of certificates.
pub fn odd_status(certificates: &[OddCertificate], ell_max: u64) -> OddStatus {
    let counted = certificates
        .iter()
        .filter(|c| c.kind != CertificateKind::CongruenceEvidence);
    if counted
        .clone()
        .any(|c| c.primes_covered == Coverage::AllOdd)
    {
        return OddStatus::AllOdd;
    }
    let all = odd_primes_up_to(ell_max);
    let covered = all
        .iter()
        .all(|&l| counted.clone().any(|c| c.primes_covered.contains(l)));
    if covered && !all.is_empty() {
        OddStatus::UpTo { ell_max }
    } else {
        OddStatus::Open
    }
}

/// The twisted-surface flag, read off the certificates of a report: some
/// certificate must make `Br(Ā)^Γ` vanish at 2 and the odd part must be
/// covered.
pub fn twisted_flag(report: &BrauerReport) -> TwistedFlag {
    let odd = odd_status(&report.certificates, report.options.ell_max);
    let basis = report
        .certificates
        .iter()
        .find(|c| c.two_primary == Some(TwoPrimary::Vanishes));
    match (basis, odd) {
        (Some(c), OddStatus::AllOdd | OddStatus::UpTo { .. }) => TwistedFlag {
            set: true,
            basis: Some(c.kind),
            condition: Some(match c.ell_max {
                Some(l) => format!("Br(A-bar)^Gamma = 0 checked for ell <= {l} only"),
                None => "Br(A-bar)^Gamma = 0".into(),
            }),
        },
        _ => TwistedFlag {
            set: false,
            basis: None,
            condition: None,
        },
    }
}

fn outcome_text(o: &CheckOutcome) -> String {
    match o {
        CheckOutcome::Certificate(_) => "certificate".into(),
        CheckOutcome::Failure(reason) => format!("failed: {reason}"),
    }
}

struct OddSearch {
    certificates: Vec<OddCertificate>,
    attempts: Vec<Attempt>,
}

impl OddSearch {
    fn record(&mut self, kind: CertificateKind, outcome: CheckOutcome) -> bool {
        self.attempts.push(Attempt {
            kind,
            outcome: outcome_text(&outcome),
        });
        match outcome.certificate() {
            Some(c) => {
                self.certificates.push(c);
                true
            }
            None => false,
        }
    }
}

fn odd_strategies(
    first: &CurveLW,
    second: &CurveLW,
    same: bool,
    gate: Gate,
    options: &AnalysisOptions,
) -> Result<OddSearch> {
    let mut s = OddSearch {
        certificates: Vec::new(),
        attempts: Vec::new(),
    };
    let (ell_max, bound) = (options.ell_max, options.bound_b);
    if same {
        if s.record(
            CertificateKind::MultiplicativeReduction,
            multiplicative_reduction_self_check(first),
        ) {
            return Ok(s);
        }
        if is_cm_j(&first.j_invariant()) {
            let ells = options
                .odd_primes
                .clone()
                .unwrap_or_else(|| odd_primes_up_to(ell_max));
            let cert = cm_no_isogeny_certificate(first, &ells, bound)?;
            s.record(
                CertificateKind::CmNoIsogeny,
                CheckOutcome::Certificate(cert),
            );
            return Ok(s);
        }
        let include_two = first.two_torsion_roots().is_err();
        s.record(
            CertificateKind::SurjectivitySampling,
            surjectivity_check(first, ell_max, bound, include_two)?,
        );
        return Ok(s);
    }
    if s.record(
        CertificateKind::MultiplicativeReduction,
        multiplicative_reduction_check(first, second),
    ) || s.record(
        CertificateKind::MultiplicativeReduction,
        multiplicative_reduction_check(second, first),
    ) {
        return Ok(s);
    }
    if let Some([x, y]) = &options.six_torsion_point {
        let point: (Rational, Rational) = (x.to_rational()?, y.to_rational()?);
        if s.record(
            CertificateKind::CmSixTorsion,
            cm_six_torsion_check(first, second, point, ell_max, bound)?,
        ) {
            return Ok(s);
        }
    }
    if gate == Gate::NonIsogenous {
        s.record(
            CertificateKind::NonExceptionalSampling,
            non_exceptional_pair_check(first, second, ell_max, bound)?,
        );
    }
    Ok(s)
}

/// Odd ℓ up to `ell_max` at which the traces of the two curves agree mod ℓ
/// for every tabulated prime: candidates for an odd transcendental class.
fn congruence_certificate(
    first: &CurveLW,
    second: &CurveLW,
    options: &AnalysisOptions,
) -> Option<OddCertificate> {
    let bound = options.bound_b.min(1000);
    let mut witnesses = Vec::new();
    for ell in odd_primes_up_to(options.ell_max) {
        if let Congruence::Pass { primes_checked } = congruence_evidence(first, second, ell, bound)
        {
            witnesses.push(Witness {
                ell: Some(ell),
                prime: None,
                claim: format!(
                    "a_p(E) = a_p(E') mod {ell} at {primes_checked} primes p <= {bound}"
                ),
            });
        }
    }
    (!witnesses.is_empty()).then(|| OddCertificate {
        kind: CertificateKind::CongruenceEvidence,
        primes_covered: Coverage::Primes(Vec::new()),
        two_primary: None,
        ell_max: Some(options.ell_max),
        inputs: [
            ("E".to_string(), first.to_string()),
            ("E'".to_string(), second.to_string()),
        ]
        .into(),
        witnesses,
        caveats: vec!["congruent traces are necessary for E_ell = E'_ell, not sufficient".into()],
    })
}

/// Runs the whole analysis on `X = Kum(E × E')`.
pub fn analyze(spec: &CurvePairSpec) -> Result<BrauerReport> {
    let options = spec.options.clone();
    let first = spec.first.to_curve()?;
    let second = spec.second.to_curve()?;
    let labels = spec
        .labels
        .clone()
        .unwrap_or_else(|| ["E".to_string(), "E'".to_string()]);
    let mut caveats = Vec::new();

    let rank = rank_r(&first, &second, options.bound_b)?;
    let same = same_curve(&first, &second);

    let residue = match (first.to_rt2(), second.to_rt2()) {
        (Ok(e), Ok(f)) => {
            let m = residue_matrix_for(&e, &f);
            let result = Brauer2Result::new(m.kernel(), rank.r, rank.gate)?;
            let pair = m.pair().clone().map(|v| v.to_string());
            Some((pair, m.to_table(), result))
        }
        _ => {
            caveats.push(
                "a curve lacks full rational 2-torsion: d is not computed and the 2-primary part \
                 is treated on the abelian surface"
                    .to_string(),
            );
            None
        }
    };

    match rank.confidence {
        Confidence::Heuristic => caveats.push(format!(
            "r = {} assumes E has no CM, based on j(E) not being a CM j-invariant",
            rank.r.unwrap_or(0)
        )),
        Confidence::Inconclusive => caveats.push(match rank.r {
            Some(2) => "E = E' has CM; the cohomological condition needed for d - r is not checked"
                .to_string(),
            _ => format!(
                "no non-isogeny certificate with B = {} and the curves are not the same model",
                options.bound_b
            ),
        }),
        Confidence::Certified => {}
    }

    let mut search = odd_strategies(&first, &second, same, rank.gate, &options)?;
    let odd_part = odd_status(&search.certificates, options.ell_max);
    if odd_part == OddStatus::Open && !same {
        if let Some(c) = congruence_certificate(&first, &second, &options) {
            search.certificates.push(c);
        }
    }
    for c in &search.certificates {
        for cav in &c.caveats {
            push_unique(&mut caveats, cav.clone());
        }
    }
    if let OddStatus::UpTo { ell_max } = odd_part {
        push_unique(
            &mut caveats,
            format!("odd part certified only for ell <= {ell_max}"),
        );
    }
    if odd_part == OddStatus::Open {
        caveats.push("no certificate covers every odd prime up to ell_max".into());
    }

    let dim2 = residue
        .as_ref()
        .map(|r| r.2.dim2)
        .unwrap_or(Dim2::NotDetermined);
    let two_part = if !rank.gate.passes() {
        TwoStatus::Undetermined
    } else if dim2 == Dim2::Value(0) {
        TwoStatus::Residues
    } else if let Dim2::Value(_) = dim2 {
        TwoStatus::NotTrivial
    } else if search.certificates.iter().any(|c| c.two_primary.is_some()) {
        TwoStatus::AbelianSurface
    } else {
        TwoStatus::Undetermined
    };
    if two_part == TwoStatus::AbelianSurface {
        caveats.push(
            "2-primary part handled by the exact test at ell = 2 on E x E', not by residues".into(),
        );
    }

    let conclusion = match (two_part, odd_part) {
        (TwoStatus::NotTrivial, _) => Conclusion::TwoPartNontrivial,
        (
            TwoStatus::Residues | TwoStatus::AbelianSurface,
            OddStatus::AllOdd | OddStatus::UpTo { .. },
        ) => Conclusion::Trivial,
        (TwoStatus::Residues | TwoStatus::AbelianSurface, OddStatus::Open) => {
            Conclusion::OddPartOpen
        }
        _ => Conclusion::Inconclusive,
    };
    if conclusion == Conclusion::Inconclusive {
        push_unique(
            &mut caveats,
            "gate or 2-primary part not established".into(),
        );
    }

    let mut witnesses = Vec::new();
    if let Some(p) = rank.evidence.prime {
        witnesses.push(Witness {
            ell: None,
            prime: Some(p),
            claim: format!(
                "non-isogeny: {}",
                rank.evidence.detail.clone().unwrap_or_default()
            ),
        });
    }
    for c in &search.certificates {
        witnesses.extend(c.witnesses.iter().cloned());
    }

    let (residue_pair, matrix, d, kernel_basis) = match residue {
        Some((pair, table, result)) => {
            (Some(pair), Some(table), Some(result.d), result.kernel_basis)
        }
        None => (None, None, None, Vec::new()),
    };
    let mut report = BrauerReport {
        labels,
        curves: [first.to_string(), second.to_string()],
        j_invariants: [
            first.j_invariant().to_string(),
            second.j_invariant().to_string(),
        ],
        surface: surface_equation_for(&first, &second),
        residue_pair,
        matrix,
        d,
        kernel_basis,
        r: rank.r,
        r_confidence: rank.confidence,
        gate: rank.gate,
        isogeny_evidence: rank.evidence,
        dim2,
        certificates: search.certificates,
        attempts: search.attempts,
        witnesses,
        two_part,
        odd_part,
        twisted: TwistedFlag {
            set: false,
            basis: None,
            condition: None,
        },
        conclusion,
        caveats,
        options,
    };
    report.twisted = twisted_flag(&report);
    Ok(report)
}
