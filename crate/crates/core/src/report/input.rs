//! Curve records and analysis requests as read from JSON.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::certificates::{DEFAULT_BOUND_B, DEFAULT_ELL_MAX};
use crate::curves::{CurveLW, CurveRT2};
use crate::error::{Error, Result};

/// An integer or rational, written either as a JSON integer or as a
/// `"num/den"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Num::Int(n) => Ok(Rational::from_integer((*n).into())),
            Num::Text(s) => parse_rational(s),
        }
    }

    pub fn to_integer(&self) -> Result<BigInt> {
        let q = self.to_rational()?;
        if q.is_integer() {
            Ok(q.to_integer())
        } else {
            Err(Error::Parse(format!("expected an integer, got {self}")))
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        let s = format_rational(q);
        s.parse::<i64>().map(Num::Int).unwrap_or(Num::Text(s))
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Int(n) => write!(f, "{n}"),
            Num::Text(s) => f.write_str(s),
        }
    }
}

/// `{"rt2": {"a": .., "b": ..}}` or `{"weierstrass": [a1, a2, a3, a4, a6]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum CurveRecord {
    Rt2 { a: Num, b: Num },
    Weierstrass([Num; 5]),
}

impl CurveRecord {
    pub fn rt2(a: i64, b: i64) -> Self {
        CurveRecord::Rt2 {
            a: Num::Int(a),
            b: Num::Int(b),
        }
    }

    pub fn weierstrass(coeffs: [i64; 5]) -> Self {
        CurveRecord::Weierstrass(coeffs.map(Num::Int))
    }

    pub fn to_curve(&self) -> Result<CurveLW> {
        match self {
            CurveRecord::Rt2 { a, b } => {
                Ok(CurveRT2::new(a.to_integer()?, b.to_integer()?)?.to_lw())
            }
            CurveRecord::Weierstrass(c) => {
                let [a1, a2, a3, a4, a6] = c;
                CurveLW::new([
                    a1.to_rational()?,
                    a2.to_rational()?,
                    a3.to_rational()?,
                    a4.to_rational()?,
                    a6.to_rational()?,
                ])
            }
        }
    }

    /// Parses a record from JSON text.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn default_bound() -> u64 {
    DEFAULT_BOUND_B
}

fn default_ell_max() -> u64 {
    DEFAULT_ELL_MAX
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisOptions {
    /// Largest prime p used in Frobenius tables and searches.
    #[serde(rename = "bound_B", default = "default_bound")]
    pub bound_b: u64,
    /// Largest ℓ for the sampling routes.
    #[serde(default = "default_ell_max")]
    pub ell_max: u64,
    /// Odd primes for the CM isogeny-exclusion route, replacing those up to
    /// `ell_max`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub odd_primes: Option<Vec<u64>>,
    /// A rational point of order 6 on the second curve.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub six_torsion_point: Option<[Num; 2]>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            bound_b: DEFAULT_BOUND_B,
            ell_max: DEFAULT_ELL_MAX,
            odd_primes: None,
            six_torsion_point: None,
        }
    }
}

/// Two curves to analyze on `X = Kum(E × E')`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvePairSpec {
    pub first: CurveRecord,
    pub second: CurveRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<[String; 2]>,
    #[serde(default)]
    pub options: AnalysisOptions,
}

impl CurvePairSpec {
    pub fn new(first: CurveRecord, second: CurveRecord) -> Self {
        Self {
            first,
            second,
            labels: None,
            options: AnalysisOptions::default(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}
