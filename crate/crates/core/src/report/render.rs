//! JSON and plain-text renderings of a report.

use std::fmt::Write;
use std::str::FromStr;

use super::{BrauerReport, Conclusion, OddStatus};
use crate::certificates::Coverage;
use crate::error::Error;
use crate::residue::Dim2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref()
        .map(ToString::to_string)
        .unwrap_or_else(|| "not computed".into())
}

/// Pretty JSON with a trailing newline, or a prose summary.
pub fn render_report(report: &BrauerReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

fn render_text(r: &BrauerReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "{}: {}", r.labels[0], r.curves[0]);
    let _ = writeln!(w, "{}: {}", r.labels[1], r.curves[1]);
    let _ = writeln!(w, "surface: {}", r.surface);
    let _ = writeln!(w);
    if let Some(m) = &r.matrix {
        let width = m.iter().flatten().map(|e| e.len()).max().unwrap_or(1);
        let _ = writeln!(w, "residue matrix:");
        for row in m {
            let cells: Vec<String> = row.iter().map(|e| format!("{e:>width$}")).collect();
            let _ = writeln!(w, "  {}", cells.join(" "));
        }
    }
    let _ = writeln!(w, "d = {}", opt(&r.d));
    let _ = writeln!(
        w,
        "r = {} ({:?}), gate: {}",
        opt(&r.r),
        r.r_confidence,
        r.gate
    );
    let dim2 = match r.dim2 {
        Dim2::Value(v) => v.to_string(),
        Dim2::NotDetermined => "not determined".into(),
    };
    let _ = writeln!(w, "dim Br(X)_2 / Br(Q)_2 = {dim2}");
    let _ = writeln!(w);
    for c in &r.certificates {
        let cov = match &c.primes_covered {
            Coverage::AllOdd => "all odd primes".to_string(),
            Coverage::Primes(v) if v.is_empty() => "no primes".to_string(),
            Coverage::Primes(v) => format!("ell in {v:?}"),
        };
        let _ = writeln!(w, "certificate {}: {cov}", kebab(&c.kind));
        for wt in &c.witnesses {
            match wt.ell {
                Some(ell) => {
                    let _ = writeln!(w, "  - [ell = {ell}] {}", wt.claim);
                }
                None => {
                    let _ = writeln!(w, "  - {}", wt.claim);
                }
            }
        }
    }
    for a in &r.attempts {
        if a.outcome != "certificate" {
            let _ = writeln!(w, "tried {}: {}", kebab(&a.kind), a.outcome);
        }
    }
    let odd = match r.odd_part {
        OddStatus::AllOdd => "all odd primes".to_string(),
        OddStatus::UpTo { ell_max } => format!("odd primes up to {ell_max}"),
        OddStatus::Open => "open".to_string(),
    };
    let _ = writeln!(w, "odd part: {odd}");
    let _ = writeln!(
        w,
        "twisted surfaces: {}",
        if r.twisted.set { "yes" } else { "no" }
    );
    let verdict = match r.conclusion {
        Conclusion::Trivial => "trivial: Br(X) = Br(Q)",
        other => other.as_str(),
    };
    let _ = writeln!(w, "conclusion: {verdict}");
    for c in &r.caveats {
        let _ = writeln!(w, "caveat: {c}");
    }
    out
}

fn kebab<T: serde::Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::from("?"),
    }
}
