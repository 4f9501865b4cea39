//! Residues of the four quaternion symbol algebras attached to a pair of
//! curves with rational 2-torsion, and the 2-torsion part of the Brauer
//! group they determine.
//!
//! For `E: y² = x(x − a)(x − b)` and `E': v² = u(u − a')(u − b')` the
//! algebras are `A_{μ,ν} = ((x − μ)(x − b), (u − ν)(u − b'))` for
//! `μ ∈ {0, a}`, `ν ∈ {0, a'}`. Their residues along the lines `l_{ij}` over
//! the pairs of 2-torsion x-coordinates are square classes of Q.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational, BitMatrix, Rational, SquareClass};
use crate::curves::{CurveLW, CurveRT2};
use crate::error::{Error, Result};
use crate::rank::Gate;

/// The four symbol algebras, in matrix row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algebra {
    #[serde(rename = "A_{a,a'}")]
    AA,
    #[serde(rename = "A_{a,0}")]
    A0,
    #[serde(rename = "A_{0,a'}")]
    ZeroA,
    #[serde(rename = "A_{0,0}")]
    ZeroZero,
}

impl Algebra {
    pub const ALL: [Algebra; 4] = [Algebra::AA, Algebra::A0, Algebra::ZeroA, Algebra::ZeroZero];

    /// `(μ, ν)` as indices into the 2-torsion x-coordinates.
    pub fn indices(self) -> (Root, Root) {
        match self {
            Algebra::AA => (Root::A, Root::A),
            Algebra::A0 => (Root::A, Root::Zero),
            Algebra::ZeroA => (Root::Zero, Root::A),
            Algebra::ZeroZero => (Root::Zero, Root::Zero),
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Algebra::AA => "A_{a,a'}",
            Algebra::A0 => "A_{a,0}",
            Algebra::ZeroA => "A_{0,a'}",
            Algebra::ZeroZero => "A_{0,0}",
        };
        f.write_str(s)
    }
}

/// One of the 2-torsion x-coordinates `0, a, b` (or `0, a', b'`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Root {
    Zero,
    A,
    B,
}

impl Root {
    pub const ALL: [Root; 3] = [Root::Zero, Root::A, Root::B];

    fn label(self, primed: bool) -> &'static str {
        match (self, primed) {
            (Root::Zero, _) => "0",
            (Root::A, false) => "a",
            (Root::B, false) => "b",
            (Root::A, true) => "a'",
            (Root::B, true) => "b'",
        }
    }
}

/// The line `l_{ij}` on the Kummer surface over a pair of 2-torsion points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    pub first: Root,
    pub second: Root,
}

impl Line {
    pub const fn new(first: Root, second: Root) -> Self {
        Self { first, second }
    }

    /// The four columns of the residue matrix, in order.
    pub const BASIC: [Line; 4] = [
        Line::new(Root::Zero, Root::Zero),
        Line::new(Root::Zero, Root::A),
        Line::new(Root::A, Root::Zero),
        Line::new(Root::A, Root::A),
    ];

    /// All nine lines, first index major.
    pub fn all() -> Vec<Line> {
        Root::ALL
            .iter()
            .flat_map(|&i| Root::ALL.iter().map(move |&j| Line::new(i, j)))
            .collect()
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "l_{{{},{}}}",
            self.first.label(false),
            self.second.label(true)
        )
    }
}

/// Residues of the four algebras at a set of lines. Rows follow
/// [`Algebra::ALL`]; columns are listed in `columns`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueMatrix {
    pair: [BigInt; 4],
    columns: Vec<Line>,
    rows: [Vec<SquareClass>; 4],
}

fn class(n: BigInt) -> SquareClass {
    SquareClass::of_integer(&n).expect("residue entries are nonzero")
}

/// The 4×4 residue matrix at `l_{00}, l_{0,a'}, l_{a,0}, l_{a,a'}`:
///
/// ```text
///   1        ab          a'b'        −aa'
///   ab       1           aa'         a'(a'−b')
///   a'b'     aa'         1           a(a−b)
///   −aa'     a'(a'−b')   a(a−b)      1
/// ```
pub fn build_residue_matrix(
    a: impl Into<BigInt>,
    b: impl Into<BigInt>,
    a2: impl Into<BigInt>,
    b2: impl Into<BigInt>,
) -> Result<ResidueMatrix> {
    let (a, b, a2, b2) = (a.into(), b.into(), a2.into(), b2.into());
    if a.is_zero() || b.is_zero() || a2.is_zero() || b2.is_zero() || a == b || a2 == b2 {
        return Err(Error::Degenerate(format!(
            "curve pair (a, b, a', b') = ({a}, {b}, {a2}, {b2})"
        )));
    }
    let one = SquareClass::identity;
    let ab = class(&a * &b);
    let ab2 = class(&a2 * &b2);
    let minus_aa2 = class(-(&a * &a2));
    let aa2 = class(&a * &a2);
    let e_second = class(&a2 * (&a2 - &b2));
    let e_first = class(&a * (&a - &b));
    let rows = [
        vec![one(), ab.clone(), ab2.clone(), minus_aa2.clone()],
        vec![ab, one(), aa2.clone(), e_second.clone()],
        vec![ab2, aa2, one(), e_first.clone()],
        vec![minus_aa2, e_second, e_first, one()],
    ];
    Ok(ResidueMatrix {
        pair: [a, b, a2, b2],
        columns: Line::BASIC.to_vec(),
        rows,
    })
}

/// [`build_residue_matrix`] for two curves in two-torsion form.
pub fn residue_matrix_for(first: &CurveRT2, second: &CurveRT2) -> ResidueMatrix {
    build_residue_matrix(
        first.a().clone(),
        first.b().clone(),
        second.a().clone(),
        second.b().clone(),
    )
    .expect("curve types guarantee nondegenerate data")
}

/// Dimension and a basis of the kernel of the residue map on the span of the
/// four algebras.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kernel {
    pub d: usize,
    pub basis: Vec<Vec<Algebra>>,
}

impl ResidueMatrix {
    pub fn pair(&self) -> &[BigInt; 4] {
        &self.pair
    }

    pub fn columns(&self) -> &[Line] {
        &self.columns
    }

    pub fn row(&self, algebra: Algebra) -> &[SquareClass] {
        &self.rows[algebra as usize]
    }

    pub fn entry(&self, algebra: Algebra, line: Line) -> Option<&SquareClass> {
        let c = self.columns.iter().position(|&l| l == line)?;
        Some(&self.rows[algebra as usize][c])
    }

    pub fn is_symmetric(&self) -> bool {
        self.columns.len() == 4
            && (0..4).all(|i| (0..4).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    pub fn has_trivial_diagonal(&self) -> bool {
        self.columns.len() == 4 && (0..4).all(|i| self.rows[i][i].is_identity())
    }

    /// Fills in the five remaining lines from the rule that, for each
    /// algebra, the residues along the three lines with a fixed first (or
    /// fixed second) index multiply to 1.
    pub fn extend_to_nine(&self) -> ResidueMatrix {
        let rows = std::array::from_fn(|r| {
            let basic = |i: Root, j: Root| -> SquareClass {
                self.entry(Algebra::ALL[r], Line::new(i, j))
                    .cloned()
                    .expect("basic column present")
            };
            Line::all()
                .into_iter()
                .map(|line| match (line.first, line.second) {
                    (Root::B, Root::B) => {
                        let b0 = &basic(Root::Zero, Root::Zero) * &basic(Root::A, Root::Zero);
                        let ba = &basic(Root::Zero, Root::A) * &basic(Root::A, Root::A);
                        &b0 * &ba
                    }
                    (i, Root::B) => &basic(i, Root::Zero) * &basic(i, Root::A),
                    (Root::B, j) => &basic(Root::Zero, j) * &basic(Root::A, j),
                    (i, j) => basic(i, j),
                })
                .collect()
        });
        ResidueMatrix {
            pair: self.pair.clone(),
            columns: Line::all(),
            rows,
        }
    }

    /// The product of the rows in `subset`, column by column.
    pub fn product_of_rows(&self, subset: &[Algebra]) -> Vec<SquareClass> {
        let mut acc = vec![SquareClass::identity(); self.columns.len()];
        for &alg in subset {
            for (slot, entry) in acc.iter_mut().zip(self.row(alg)) {
                *slot = &*slot * entry;
            }
        }
        acc
    }

    /// The residue map `(Z/2)⁴ → ∏ Q*/Q*²` as an F₂ matrix: one row per
    /// (line, basis element) with basis `{−1} ∪ {primes in any entry}`, one
    /// column per algebra.
    pub fn to_bit_matrix(&self) -> BitMatrix {
        let mut primes: Vec<_> = self
            .rows
            .iter()
            .flatten()
            .flat_map(|c| c.support().iter().cloned())
            .collect();
        primes.sort();
        primes.dedup();
        let per_column = primes.len() + 1;
        let mut m = BitMatrix::zeros(self.columns.len() * per_column, 4);
        for (alg_idx, row) in self.rows.iter().enumerate() {
            for (col, entry) in row.iter().enumerate() {
                let base = col * per_column;
                m.set(base, alg_idx, entry.is_negative());
                for p in entry.support() {
                    let k = primes.binary_search(p).expect("collected above");
                    m.set(base + 1 + k, alg_idx, true);
                }
            }
        }
        m
    }

    /// `d`: the dimension of the kernel of the residue map.
    pub fn kernel(&self) -> Kernel {
        let basis: Vec<Vec<Algebra>> = self
            .to_bit_matrix()
            .nullspace()
            .into_iter()
            .map(|v| v.ones().into_iter().map(|i| Algebra::ALL[i]).collect())
            .collect();
        Kernel {
            d: basis.len(),
            basis,
        }
    }

    /// Rows of square-class representatives, for display and reports.
    pub fn to_table(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect()
    }
}

impl fmt::Display for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|c| c.to_string().len())
            .chain(self.columns.iter().map(|l| l.to_string().len()))
            .max()
            .unwrap_or(1);
        write!(f, "{:10}", "")?;
        for l in &self.columns {
            write!(f, " {:>width$}", l.to_string())?;
        }
        writeln!(f)?;
        for (alg, row) in Algebra::ALL.iter().zip(&self.rows) {
            write!(f, "{:10}", alg.to_string())?;
            for c in row {
                write!(f, " {:>width$}", c.to_string())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The value of `dim Br(X)₂ / Br(Q)₂`, or why it was not determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Dim2 {
    Value(usize),
    #[serde(with = "not_determined")]
    NotDetermined,
}

mod not_determined {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("not determined")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "not determined" {
            Ok(())
        } else {
            Err(D::Error::custom(format!("unexpected dim2 value {s:?}")))
        }
    }
}

/// `d − r` when the gate lets the formula apply.
pub fn brauer2_dimension(d: usize, r: usize, gate: Gate) -> Result<Dim2> {
    if !gate.passes() {
        return Ok(Dim2::NotDetermined);
    }
    d.checked_sub(r)
        .map(Dim2::Value)
        .ok_or(Error::InternalContradiction { d, r })
}

/// The 2-torsion outcome of the residue computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Brauer2Result {
    pub d: usize,
    pub r: Option<usize>,
    pub dim2: Dim2,
    pub gate: Gate,
    pub kernel_basis: Vec<Vec<Algebra>>,
}

impl Brauer2Result {
    pub fn new(kernel: Kernel, r: Option<usize>, gate: Gate) -> Result<Self> {
        let dim2 = match r {
            Some(r) => brauer2_dimension(kernel.d, r, gate)?,
            None => Dim2::NotDetermined,
        };
        Ok(Self {
            d: kernel.d,
            r,
            dim2,
            gate,
            kernel_basis: kernel.basis,
        })
    }
}

const MINUS: char = '\u{2212}';

fn linear_factor(var: char, root: &Rational) -> String {
    if root.is_zero() {
        return var.to_string();
    }
    let sign = if root.is_negative() { '+' } else { MINUS };
    format!("({var}{sign}{})", format_rational(&root.abs()))
}

/// Roots ordered by absolute value, positive before negative on ties.
fn display_order(roots: &[Rational; 3]) -> Vec<Rational> {
    let mut v = roots.to_vec();
    v.sort_by(|x, y| x.abs().cmp(&y.abs()).then(y.cmp(x)));
    v
}

/// `(x−r₀)(x−r₁)(x−r₂)` in a canonical order.
pub fn factored_cubic(var: char, roots: &[Rational; 3]) -> String {
    display_order(roots)
        .iter()
        .map(|r| linear_factor(var, r))
        .collect()
}

/// The affine Kummer surface `z² = f(x)·g(y)` for two curves given by their
/// 2-torsion x-coordinates.
pub fn surface_equation(first: &[Rational; 3], second: &[Rational; 3]) -> String {
    format!(
        "z\u{b2} = {}{}",
        factored_cubic('x', first),
        factored_cubic('y', second)
    )
}

fn superscript(k: usize) -> &'static str {
    ["", "", "\u{b2}", "\u{b3}"][k]
}

/// A cubic from the top coefficient down, e.g. `x³ + 6x − 2`.
pub fn cubic_text(var: char, coeffs: &[Rational; 4]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        let deg = 3 - k;
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push(MINUS);
            }
        } else {
            out.push_str(if c.is_negative() { " \u{2212} " } else { " + " });
        }
        if deg == 0 || mag != Rational::from_integer(1.into()) {
            out.push_str(&format_rational(&mag));
        }
        if deg > 0 {
            out.push(var);
            out.push_str(superscript(deg));
        }
    }
    out
}

/// The factor of the surface equation contributed by one curve: factored
/// over its 2-torsion x-coordinates when they are rational, otherwise the
/// cubic `x³ + a2x² + a4x + a6` (or `4x³ + b2x² + 2b4x + b6` when `a1` or
/// `a3` is nonzero), in parentheses.
pub fn curve_factor(var: char, curve: &CurveLW) -> String {
    if let Ok(roots) = curve.two_torsion_roots() {
        return factored_cubic(var, &roots);
    }
    let [a1, a2, a3, a4, a6] = curve.coefficients();
    let coeffs = if a1.is_zero() && a3.is_zero() {
        [
            Rational::from_integer(1.into()),
            a2.clone(),
            a4.clone(),
            a6.clone(),
        ]
    } else {
        curve.two_division_cubic()
    };
    format!("({})", cubic_text(var, &coeffs))
}

/// `z² = f(x)g(y)` for two curves in any model.
pub fn surface_equation_for(first: &CurveLW, second: &CurveLW) -> String {
    format!(
        "z\u{b2} = {}{}",
        curve_factor('x', first),
        curve_factor('y', second)
    )
}

/// [`surface_equation`] for `(a, b, a', b')`.
pub fn surface_equation_rt2(first: &CurveRT2, second: &CurveRT2) -> String {
    surface_equation(&first.roots(), &second.roots())
}

/// Reads the root multisets back from a factored surface equation.
pub fn parse_surface_roots(eq: &str) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let rhs = eq.split_once('=')?.1.trim();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut chars = rhs.chars().peekable();
    while let Some(c) = chars.next() {
        let (var, root) = match c {
            'x' | 'y' => (c, Rational::zero()),
            '(' => {
                let var = chars.next()?;
                let sign = chars.next()?;
                let body: String = chars.by_ref().take_while(|&ch| ch != ')').collect();
                let v = parse_rational(&body).ok()?;
                let root = match sign {
                    '+' => -v,
                    c if c == MINUS || c == '-' => v,
                    _ => return None,
                };
                (var, root)
            }
            ' ' => continue,
            _ => return None,
        };
        match var {
            'x' => xs.push(root),
            'y' => ys.push(root),
            _ => return None,
        }
    }
    Some((xs, ys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn rows(m: &ResidueMatrix) -> Vec<Vec<String>> {
        m.to_table()
    }

    fn strs(v: &[&[&str]]) -> Vec<Vec<String>> {
        v.iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    #[test]
    fn matrix_for_5_7_1_2() {
        let m = build_residue_matrix(5, 7, 1, 2).unwrap();
        assert_eq!(
            rows(&m),
            strs(&[
                &["1", "35", "2", "-5"],
                &["35", "1", "5", "-1"],
                &["2", "5", "1", "-10"],
                &["-5", "-1", "-10", "1"],
            ])
        );
        assert_eq!(m.kernel().d, 0);
    }

    #[test]
    fn matrix_for_curve_28_translate() {
        let m = build_residue_matrix(1, -3, 1, -3).unwrap();
        assert_eq!(
            rows(&m),
            strs(&[
                &["1", "-3", "-3", "-1"],
                &["-3", "1", "1", "1"],
                &["-3", "1", "1", "1"],
                &["-1", "1", "1", "1"],
            ])
        );
        let k = m.kernel();
        assert_eq!(k.d, 1);
        assert_eq!(k.basis, vec![vec![Algebra::A0, Algebra::ZeroA]]);
    }

    #[test]
    fn degenerate_input_rejected() {
        assert!(build_residue_matrix(0, 1, 1, 2).is_err());
        assert!(build_residue_matrix(3, 3, 1, 2).is_err());
        assert!(build_residue_matrix(3, 4, 2, 2).is_err());
    }

    #[test]
    fn nine_line_extension() {
        let m = build_residue_matrix(1, -3, 1, -3).unwrap().extend_to_nine();
        let e = m
            .entry(Algebra::ZeroZero, Line::new(Root::Zero, Root::B))
            .unwrap();
        assert_eq!(e.to_string(), "-1");

        let m = build_residue_matrix(5, 7, 1, 2).unwrap().extend_to_nine();
        for j in Root::ALL {
            let prod = m
                .entry(Algebra::ZeroZero, Line::new(Root::Zero, j))
                .unwrap()
                * m.entry(Algebra::ZeroZero, Line::new(Root::A, j)).unwrap();
            assert_eq!(
                &prod,
                m.entry(Algebra::ZeroZero, Line::new(Root::B, j)).unwrap()
            );
        }
    }

    #[test]
    fn product_rule_matches_direct_residue() {
        // residue of A_00 at l_{0,b'} is a(b' − a')
        let (a, b, a2, b2) = (6, -10, 15, 4);
        let m = build_residue_matrix(a, b, a2, b2).unwrap().extend_to_nine();
        assert_eq!(
            m.entry(Algebra::ZeroZero, Line::new(Root::Zero, Root::B))
                .unwrap(),
            &SquareClass::of_i64(a * (b2 - a2)).unwrap()
        );
    }

    #[test]
    fn dimension_formula() {
        assert_eq!(
            brauer2_dimension(0, 0, Gate::NonIsogenous),
            Ok(Dim2::Value(0))
        );
        assert_eq!(
            brauer2_dimension(1, 1, Gate::SameCurveWithoutCm),
            Ok(Dim2::Value(0))
        );
        assert_eq!(
            brauer2_dimension(1, 0, Gate::NonIsogenous),
            Ok(Dim2::Value(1))
        );
        assert_eq!(brauer2_dimension(1, 2, Gate::None), Ok(Dim2::NotDetermined));
        assert_eq!(
            brauer2_dimension(0, 1, Gate::SameCurveWithoutCm),
            Err(Error::InternalContradiction { d: 0, r: 1 })
        );
    }

    #[test]
    fn dim2_serializes_as_number_or_marker() {
        assert_eq!(serde_json::to_string(&Dim2::Value(3)).unwrap(), "3");
        assert_eq!(
            serde_json::to_string(&Dim2::NotDetermined).unwrap(),
            "\"not determined\""
        );
        let back: Dim2 = serde_json::from_str("\"not determined\"").unwrap();
        assert_eq!(back, Dim2::NotDetermined);
    }

    #[test]
    fn surface_equations() {
        let e = CurveRT2::new(5, 7).unwrap();
        let f = CurveRT2::new(1, 2).unwrap();
        assert_eq!(surface_equation_rt2(&e, &f), "z² = x(x−5)(x−7)y(y−1)(y−2)");
        let roots = [rat(1), rat(2), rat(-2)];
        assert_eq!(
            surface_equation(&roots, &roots),
            "z² = (x−1)(x−2)(x+2)(y−1)(y−2)(y+2)"
        );
        let roots29 = [rat(-1), rat(-2), rat(3)];
        assert_eq!(
            surface_equation(&roots29, &roots29),
            "z² = (x+1)(x+2)(x−3)(y+1)(y+2)(y−3)"
        );
    }

    #[test]
    fn surface_equations_without_two_torsion() {
        let e = CurveLW::from_ints([0, 0, 0, 6, -2]).unwrap();
        let f = CurveLW::from_ints([0, 0, 0, 0, 1]).unwrap();
        assert_eq!(surface_equation_for(&e, &f), "z² = (x³ + 6x − 2)(y³ + 1)");
        let e = CurveLW::from_ints([0, 0, 1, -1, 0]).unwrap();
        let f = CurveLW::from_ints([0, 1, 1, 0, 0]).unwrap();
        assert_eq!(
            surface_equation_for(&e, &f),
            "z² = (4x³ − 4x + 1)(4y³ + 4y² + 1)"
        );
        let g = CurveLW::from_ints([0, -1, 0, -4, 4]).unwrap();
        assert_eq!(
            surface_equation_for(&g, &g),
            "z² = (x−1)(x−2)(x+2)(y−1)(y−2)(y+2)"
        );
    }

    #[test]
    fn surface_equation_parses_back() {
        let xs = [rat(0), Rational::new(3.into(), 2.into()), rat(-7)];
        let ys = [rat(4), rat(-4), rat(9)];
        let eq = surface_equation(&xs, &ys);
        let (px, py) = parse_surface_roots(&eq).unwrap();
        let sorted = |v: &[Rational]| {
            let mut v = v.to_vec();
            v.sort();
            v
        };
        assert_eq!(sorted(&px), sorted(&xs));
        assert_eq!(sorted(&py), sorted(&ys));
    }
}
