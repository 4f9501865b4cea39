//! Certificates that odd-order (and, where noted, 2-primary) parts of
//! `Br(Ā)^Γ` vanish, plus congruence evidence pointing the other way.

mod gl2;
mod odd;
mod surjectivity;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use gl2::{validate_criterion_oracle, CriterionValidation, Gl2, Offender};
pub use odd::{
    cm_no_isogeny_certificate, cm_six_torsion_check, congruence_evidence, family_conditions,
    multiplicative_reduction_check, multiplicative_reduction_self_check, no_rational_ell_isogeny,
    no_rational_ell_isogeny_in, non_exceptional_pair_check, surjectivity_check, Congruence,
    DEFAULT_BOUND_B, DEFAULT_ELL_MAX,
};
pub use surjectivity::{
    mod_ell_surjectivity, mod_ell_surjectivity_with, three_adic_image_is_full,
    two_adic_image_is_full, witness_types, Surjectivity, SurjectivityMethod, SurjectivityVerdict,
    DETERMINANT_ASSUMPTION,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    /// `v₅(j) = −2^m`, `v₇(j) = −2^n` on one side, good reduction at 5 and 7
    /// with full rational 2-torsion on the other (or the same curve twice).
    MultiplicativeReduction,
    /// A CM curve with no rational ℓ-isogeny, paired with itself.
    CmNoIsogeny,
    /// A surjective curve paired with a CM curve having a rational point of
    /// order 6.
    CmSixTorsion,
    /// A curve surjective at every sampled ℓ, paired with itself.
    SurjectivitySampling,
    /// Two curves with irreducible mod-ℓ representations whose traces
    /// differ mod ℓ, at every sampled ℓ.
    NonExceptionalSampling,
    CongruenceEvidence,
}

/// Odd primes `ℓ` for which the ℓ-part of `Br(Ā)^Γ` is certified trivial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coverage {
    AllOdd,
    Primes(Vec<u64>),
}

impl Coverage {
    pub fn contains(&self, ell: u64) -> bool {
        match self {
            Coverage::AllOdd => ell % 2 == 1,
            Coverage::Primes(v) => v.contains(&ell),
        }
    }
}

/// What a certificate says about ℓ = 2 on the abelian surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoPrimary {
    /// `Br(A){2} ⊂ Br₁(A)`, but `Br(Ā)^Γ` may have 2-torsion.
    Algebraic,
    /// `Br(Ā)^Γ` has no 2-torsion.
    Vanishes,
}

/// One re-checkable datum behind a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ell: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prime: Option<u64>,
    pub claim: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCertificate {
    pub kind: CertificateKind,
    pub primes_covered: Coverage,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub two_primary: Option<TwoPrimary>,
    /// Largest ℓ checked, for certificates built by sampling.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ell_max: Option<u64>,
    pub inputs: BTreeMap<String, String>,
    pub witnesses: Vec<Witness>,
    pub caveats: Vec<String>,
}

/// A certificate, or the reason none could be issued.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckOutcome {
    Certificate(OddCertificate),
    Failure(String),
}

impl CheckOutcome {
    pub fn certificate(self) -> Option<OddCertificate> {
        match self {
            CheckOutcome::Certificate(c) => Some(c),
            CheckOutcome::Failure(_) => None,
        }
    }

    pub fn is_certificate(&self) -> bool {
        matches!(self, CheckOutcome::Certificate(_))
    }
}
