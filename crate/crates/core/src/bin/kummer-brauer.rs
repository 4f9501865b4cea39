use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use kummer_brauer::certificates::validate_criterion_oracle;
use kummer_brauer::curves::frobenius_table;
use kummer_brauer::error::{Error, Result};
use kummer_brauer::report::{
    analyze, render_report, search_family, CurvePairSpec, CurveRecord, Format, Num,
};
use kummer_brauer::residue::build_residue_matrix;

#[derive(Parser)]
#[command(
    name = "kummer-brauer",
    version,
    about = "Brauer groups of Kummer surfaces Kum(E x E') over Q"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: OutputFormat,
    /// Largest prime p for Frobenius tables and searches.
    #[arg(long = "bound-B", global = true)]
    bound_b: Option<u64>,
    /// Largest ell for the sampling certificates.
    #[arg(long, global = true)]
    ell_max: Option<u64>,
    /// Offset for the family generator.
    #[arg(long, global = true, allow_negative_numbers = true)]
    seed: Option<i64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a curve pair given as a JSON spec file ("-" for stdin) or
    /// inline curve records.
    Analyze {
        input: Option<PathBuf>,
        /// First curve record, e.g. '{"rt2":{"a":5,"b":7}}'.
        #[arg(long)]
        first: Option<String>,
        /// Second curve record.
        #[arg(long)]
        second: Option<String>,
        /// Point of order 6 on the second curve, as "x,y".
        #[arg(long)]
        point: Option<String>,
        /// Odd primes for the CM route, comma separated.
        #[arg(long, value_delimiter = ',')]
        odd_primes: Option<Vec<u64>>,
    },
    /// Generate members of the a = 5 + 35m, b = 7 + 35n family.
    Search {
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Analyze each member and emit the reports instead of the specs.
        #[arg(long)]
        analyze: bool,
    },
    /// Dump Frobenius traces of one curve.
    Frobenius {
        /// Curve record, e.g. '{"weierstrass":[0,0,1,-1,0]}'.
        curve: String,
    },
    /// Print the residue matrix of (a, b, a', b') and its nine-line extension.
    Matrix {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[arg(allow_negative_numbers = true)]
        a2: i64,
        #[arg(allow_negative_numbers = true)]
        b2: i64,
    },
    /// Run the GL(2, F_ell) subgroup check for ell = 3 and 5.
    ValidateCriterion {
        #[arg(long)]
        ell: Option<u64>,
    },
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("values serialize")
    );
}

fn read_spec(
    input: Option<PathBuf>,
    first: Option<String>,
    second: Option<String>,
) -> Result<CurvePairSpec> {
    match (input, first, second) {
        (Some(path), None, None) => {
            let text = if path.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
                s
            } else {
                std::fs::read_to_string(&path)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
            };
            CurvePairSpec::parse(&text)
        }
        (None, Some(f), Some(s)) => Ok(CurvePairSpec::new(
            CurveRecord::parse(&f)?,
            CurveRecord::parse(&s)?,
        )),
        _ => Err(Error::Parse(
            "give either a spec file or both --first and --second".into(),
        )),
    }
}

fn parse_point(s: &str) -> Result<[Num; 2]> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("point {s:?} is not x,y")))?;
    let num = |t: &str| {
        let t = t.trim();
        kummer_brauer::arith::parse_rational(t).map(|q| Num::from_rational(&q))
    };
    Ok([num(x)?, num(y)?])
}

fn run(cli: Cli) -> Result<()> {
    let format = match cli.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Text => Format::Text,
    };
    match cli.command {
        Command::Analyze {
            input,
            first,
            second,
            point,
            odd_primes,
        } => {
            let mut spec = read_spec(input, first, second)?;
            if let Some(b) = cli.bound_b {
                spec.options.bound_b = b;
            }
            if let Some(l) = cli.ell_max {
                spec.options.ell_max = l;
            }
            if let Some(p) = point {
                spec.options.six_torsion_point = Some(parse_point(&p)?);
            }
            if odd_primes.is_some() {
                spec.options.odd_primes = odd_primes;
            }
            let report = analyze(&spec)?;
            print!("{}", render_report(&report, format));
        }
        Command::Search {
            count,
            analyze: run_analysis,
        } => {
            if count == 0 {
                return Err(Error::InvalidBound("count must be at least 1".into()));
            }
            let mut specs = search_family(count, cli.seed.unwrap_or(0));
            for s in &mut specs {
                if let Some(b) = cli.bound_b {
                    s.options.bound_b = b;
                }
                if let Some(l) = cli.ell_max {
                    s.options.ell_max = l;
                }
            }
            if run_analysis {
                let reports = specs.iter().map(analyze).collect::<Result<Vec<_>>>()?;
                match format {
                    Format::Json => print_json(&reports),
                    Format::Text => {
                        for r in &reports {
                            println!("{}  {}", r.surface, r.conclusion.as_str());
                        }
                    }
                }
            } else {
                match format {
                    Format::Json => print_json(&specs),
                    Format::Text => {
                        for s in &specs {
                            println!(
                                "{} {}",
                                serde_json::to_string(&s.first).expect("serializes"),
                                serde_json::to_string(&s.second).expect("serializes")
                            );
                        }
                    }
                }
            }
        }
        Command::Frobenius { curve } => {
            let curve = CurveRecord::parse(&curve)?.to_curve()?;
            let bound = cli.bound_b.unwrap_or(100);
            let table = frobenius_table(&curve, bound);
            match format {
                Format::Json => print_json(&table),
                Format::Text => {
                    println!("{}", table.curve);
                    for (p, a) in table.iter() {
                        println!("{p:>8} {a:>6}");
                    }
                }
            }
        }
        Command::Matrix { a, b, a2, b2 } => {
            let m = build_residue_matrix(a, b, a2, b2)?;
            let nine = m.extend_to_nine();
            let kernel = m.kernel();
            match format {
                Format::Json => print_json(&json!({
                    "pair": [a, b, a2, b2],
                    "columns": m.columns().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "matrix": m.to_table(),
                    "nine_columns": nine.columns().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "nine_line_matrix": nine.to_table(),
                    "d": kernel.d,
                    "d_nine_lines": nine.kernel().d,
                    "kernel_basis": kernel.basis,
                    "symmetric": m.is_symmetric(),
                })),
                Format::Text => {
                    print!("{m}");
                    println!();
                    print!("{nine}");
                    println!();
                    println!("d = {}", kernel.d);
                }
            }
        }
        Command::ValidateCriterion { ell } => {
            let ells = match ell {
                Some(l) => vec![l],
                None => vec![3, 5],
            };
            let results = ells
                .into_iter()
                .map(validate_criterion_oracle)
                .collect::<Result<Vec<_>>>()?;
            match format {
                Format::Json => print_json(&results),
                Format::Text => {
                    for v in &results {
                        println!(
                            "ell = {}: {} subgroups of GL(2, F_{}), {} offending, {}",
                            v.ell,
                            v.subgroups,
                            v.ell,
                            v.offenders.len(),
                            if v.pass { "pass" } else { "FAIL" }
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
