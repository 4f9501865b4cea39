//! Independent re-check of a report's conclusion from its own fields.

use super::{odd_status, BrauerReport, Conclusion, OddStatus, TwoStatus};
use crate::certificates::CertificateKind;
use crate::rank::{Confidence, Gate};
use crate::residue::Dim2;

/// Lists every premise of the stated conclusion that the report does not
/// itself support. An empty list means the report is self-consistent.
pub fn validate_report(report: &BrauerReport) -> Result<(), Vec<String>> {
    let mut problems = Vec::new();
    let mut need = |ok: bool, msg: &str| {
        if !ok {
            problems.push(msg.to_string());
        }
    };

    if let (Some(d), Some(r), Dim2::Value(v)) = (report.d, report.r, report.dim2) {
        need(d >= r && v == d - r, "dim2 differs from d - r");
    }
    need(
        report.d.is_none_or(|d| d == report.kernel_basis.len()),
        "kernel basis size differs from d",
    );
    need(
        report.r != Some(0) || report.isogeny_evidence.prime.is_some(),
        "r = 0 without a non-isogeny witness",
    );
    need(
        report.gate != Gate::NonIsogenous || report.r == Some(0),
        "non-isogenous gate without r = 0",
    );
    need(
        report.gate != Gate::SameCurveWithoutCm || report.r == Some(1),
        "same-curve gate without r = 1",
    );
    for c in &report.certificates {
        need(!c.witnesses.is_empty(), "certificate without witnesses");
        if c.ell_max.is_some() && c.kind != CertificateKind::CmNoIsogeny {
            need(
                c.caveats.iter().any(|cv| report.caveats.contains(cv)),
                "sampled certificate caveat missing from report",
            );
        }
    }
    if report.r_confidence == Confidence::Heuristic {
        need(
            report.caveats.iter().any(|c| c.starts_with("r = ")),
            "heuristic r without caveat",
        );
    }

    let odd = odd_status(&report.certificates, report.options.ell_max);
    need(
        odd == report.odd_part,
        "odd-part status does not follow from the certificates",
    );

    match report.conclusion {
        Conclusion::Trivial => {
            need(report.gate.passes(), "trivial without a passing gate");
            let two_ok = match report.two_part {
                TwoStatus::Residues => report.dim2 == Dim2::Value(0),
                TwoStatus::AbelianSurface => {
                    report.certificates.iter().any(|c| c.two_primary.is_some())
                }
                _ => false,
            };
            need(two_ok, "trivial without a trivial 2-primary part");
            need(odd != OddStatus::Open, "trivial without odd coverage");
            if let OddStatus::UpTo { ell_max } = odd {
                need(
                    report
                        .caveats
                        .contains(&format!("odd part certified only for ell <= {ell_max}")),
                    "sampled odd part without tail caveat",
                );
            }
        }
        Conclusion::TwoPartNontrivial => {
            need(
                matches!(report.dim2, Dim2::Value(v) if v > 0),
                "two-part-nontrivial without dim2 > 0",
            );
        }
        Conclusion::OddPartOpen => {
            need(report.gate.passes(), "odd-part-open without a passing gate");
            need(odd == OddStatus::Open, "odd-part-open with odd coverage");
        }
        Conclusion::Inconclusive => {
            need(!report.caveats.is_empty(), "inconclusive without caveats");
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(problems)
    }
}
