use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{factor, rat, rational_sqrt, valuation, Rational};
use crate::error::{Error, Result};

/// `y² = x(x − a)(x − b)` with distinct nonzero integers `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveRT2 {
    a: BigInt,
    b: BigInt,
}

impl CurveRT2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a.is_zero() || b.is_zero() || a == b {
            return Err(Error::Degenerate(format!(
                "x(x - {a})(x - {b}) is not separable"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// `2⁸ (a² + b² − ab)³ / (a² b² (a − b)²)`.
    pub fn j_invariant(&self) -> Rational {
        let (a, b) = (&self.a, &self.b);
        let s = a * a + b * b - a * b;
        let num = BigInt::from(256) * &s * &s * &s;
        let diff = a - b;
        let den = a * a * b * b * &diff * &diff;
        Rational::new(num, den)
    }

    /// The same curve as `y² = x³ − (a + b)x² + ab·x`.
    pub fn to_lw(&self) -> CurveLW {
        let (a, b) = (&self.a, &self.b);
        CurveLW {
            a1: Rational::zero(),
            a2: Rational::from_integer(-(a + b)),
            a3: Rational::zero(),
            a4: Rational::from_integer(a * b),
            a6: Rational::zero(),
        }
    }

    /// The three 2-torsion x-coordinates `0, a, b`.
    pub fn roots(&self) -> [Rational; 3] {
        [
            Rational::zero(),
            Rational::from_integer(self.a.clone()),
            Rational::from_integer(self.b.clone()),
        ]
    }
}

impl fmt::Display for CurveRT2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x(x - {})(x - {})", self.a, self.b)
    }
}

/// `j = 1728 · 4p³ / (4p³ + 27q²)` for `y² = x³ + px + q`.
pub fn j_invariant_sw(p: &Rational, q: &Rational) -> Result<Rational> {
    let four_p3 = rat(4) * p * p * p;
    let den = &four_p3 + rat(27) * q * q;
    if den.is_zero() {
        return Err(Error::SingularCurve(format!(
            "4p^3 + 27q^2 = 0 for p = {p}, q = {q}"
        )));
    }
    Ok(rat(1728) * four_p3 / den)
}

/// Why [`CurveLW::to_rt2`] could not produce a two-torsion model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotRt2 {
    NoRationalTwoTorsion,
    /// `a1` or `a3` is nonzero.
    UnsupportedModel,
}

/// Long Weierstrass model `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveLW {
    pub(crate) a1: Rational,
    pub(crate) a2: Rational,
    pub(crate) a3: Rational,
    pub(crate) a4: Rational,
    pub(crate) a6: Rational,
}

impl CurveLW {
    pub fn new(coeffs: [Rational; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = coeffs;
        let curve = Self { a1, a2, a3, a4, a6 };
        if curve.discriminant().is_zero() {
            return Err(Error::SingularCurve(curve.to_string()));
        }
        Ok(curve)
    }

    pub fn from_ints(coeffs: [i64; 5]) -> Result<Self> {
        Self::new(coeffs.map(rat))
    }

    /// `y² = x³ + px + q`.
    pub fn short(p: Rational, q: Rational) -> Result<Self> {
        Self::new([Rational::zero(), Rational::zero(), Rational::zero(), p, q])
    }

    pub fn coefficients(&self) -> [&Rational; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn b2(&self) -> Rational {
        &self.a1 * &self.a1 + rat(4) * &self.a2
    }

    pub fn b4(&self) -> Rational {
        rat(2) * &self.a4 + &self.a1 * &self.a3
    }

    pub fn b6(&self) -> Rational {
        &self.a3 * &self.a3 + rat(4) * &self.a6
    }

    pub fn b8(&self) -> Rational {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        a1 * a1 * a6 + rat(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    }

    pub fn c4(&self) -> Rational {
        let b2 = self.b2();
        &b2 * &b2 - rat(24) * self.b4()
    }

    /// `Δ = −b2²b8 − 8b4³ − 27b6² + 9b2b4b6`.
    pub fn discriminant(&self) -> Rational {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * &b8) - rat(8) * &b4 * &b4 * &b4 - rat(27) * &b6 * &b6
            + rat(9) * &b2 * &b4 * &b6
    }

    /// `c4³ / Δ`.
    pub fn j_invariant(&self) -> Rational {
        let c4 = self.c4();
        &c4 * &c4 * &c4 / self.discriminant()
    }

    /// Coefficients of `4x³ + b2·x² + 2b4·x + b6`, the right-hand side after
    /// completing the square in `y`. Highest degree first.
    pub fn two_division_cubic(&self) -> [Rational; 4] {
        [rat(4), self.b2(), rat(2) * self.b4(), self.b6()]
    }

    pub fn is_p_integral(&self, p: u64) -> bool {
        self.coefficients()
            .iter()
            .all(|c| c.is_zero() || valuation(c, p).map(|v| v >= 0).unwrap_or(false))
    }

    /// Good reduction of this model (not a minimal one) at `p`.
    pub fn good_reduction_at(&self, p: u64) -> Result<bool> {
        let delta = self.discriminant();
        // validates that p is prime
        valuation(&delta, p)?;
        if !self.is_p_integral(p) {
            return Err(Error::NotIntegral { p });
        }
        Ok(valuation(&delta, p)? == 0)
    }

    pub fn contains_point(&self, x: &Rational, y: &Rational) -> bool {
        let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
        let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
        lhs == rhs
    }

    /// The rational roots of `x³ + a2x² + a4x + a6`, ascending, when there
    /// are three of them (counted with multiplicity they are distinct here,
    /// since the curve is nonsingular).
    pub fn two_torsion_roots(&self) -> Result<[Rational; 3], NotRt2> {
        if !self.a1.is_zero() || !self.a3.is_zero() {
            return Err(NotRt2::UnsupportedModel);
        }
        let roots = rational_roots_monic_cubic(&self.a2, &self.a4, &self.a6);
        match roots.as_slice() {
            [r0, r1, r2] => Ok([r0.clone(), r1.clone(), r2.clone()]),
            _ => Err(NotRt2::NoRationalTwoTorsion),
        }
    }

    /// Translates the smallest 2-torsion root to zero; the other two, in
    /// ascending order, become `(a, b)`. Rational roots are scaled by the
    /// square of their common denominator, which leaves the curve unchanged
    /// up to isomorphism.
    pub fn to_rt2(&self) -> Result<CurveRT2, NotRt2> {
        let [r0, r1, r2] = self.two_torsion_roots()?;
        Ok(rt2_from_roots(&r0, &r1, &r2).expect("distinct roots of a nonsingular cubic"))
    }
}

/// `(a, b) = (r1 − r0, r2 − r0)` scaled to integers.
pub fn rt2_from_roots(r0: &Rational, r1: &Rational, r2: &Rational) -> Result<CurveRT2> {
    let a = r1 - r0;
    let b = r2 - r0;
    let den = a.denom().lcm(b.denom());
    let scale = Rational::from_integer(&den * &den);
    let a = (a * &scale).to_integer();
    let b = (b * &scale).to_integer();
    CurveRT2::new(a, b)
}

/// Distinct-or-repeated rational roots (with multiplicity) of
/// `x³ + c2x² + c1x + c0`, sorted ascending.
pub(crate) fn rational_roots_monic_cubic(
    c2: &Rational,
    c1: &Rational,
    c0: &Rational,
) -> Vec<Rational> {
    // x = X / D turns the cubic into a monic integer one in X.
    let d = c2.denom().lcm(c1.denom()).lcm(c0.denom());
    let dq = Rational::from_integer(d.clone());
    let k2 = (c2 * &dq).to_integer();
    let k1 = (c1 * &dq * &dq).to_integer();
    let k0 = (c0 * &dq * &dq * &dq).to_integer();
    let eval = |x: &BigInt| x * x * x + &k2 * x * x + &k1 * x + &k0;

    let first = if k0.is_zero() {
        Some(BigInt::zero())
    } else {
        let f = factor(&k0).expect("nonzero");
        f.divisors()
            .into_iter()
            .map(BigInt::from)
            .flat_map(|v| [v.clone(), -v])
            .find(|x| eval(x).is_zero())
    };
    let Some(x0) = first else {
        return Vec::new();
    };
    // X³ + k2X² + k1X + k0 = (X − x0)(X² + sX + t)
    let s = &k2 + &x0;
    let t = &k1 + &x0 * &s;
    let disc = Rational::from_integer(&s * &s - BigInt::from(4) * &t);
    let mut roots = vec![Rational::from_integer(x0)];
    if let Some(sq) = rational_sqrt(&disc) {
        let minus_s = Rational::from_integer(-s);
        roots.push((&minus_s - &sq) / rat(2));
        roots.push((&minus_s + &sq) / rat(2));
    }
    let mut roots: Vec<Rational> = roots.into_iter().map(|r| r / &dq).collect();
    roots.sort();
    roots
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: &mut bool,
    coeff: &Rational,
    mono: &str,
) -> fmt::Result {
    if coeff.is_zero() {
        return Ok(());
    }
    let sign = if coeff.is_negative() { "-" } else { "+" };
    let mag = coeff.abs();
    if *first {
        if coeff.is_negative() {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {sign} ")?;
    }
    *first = false;
    if mono.is_empty() {
        write!(f, "{mag}")
    } else if mag.is_one() {
        write!(f, "{mono}")
    } else {
        write!(f, "{mag}{mono}")
    }
}

impl fmt::Display for CurveLW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2")?;
        let mut first = false;
        write_term(f, &mut first, &self.a1, "xy")?;
        write_term(f, &mut first, &self.a3, "y")?;
        write!(f, " = x^3")?;
        let mut first = false;
        write_term(f, &mut first, &self.a2, "x^2")?;
        write_term(f, &mut first, &self.a4, "x")?;
        write_term(f, &mut first, &self.a6, "")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn lw(c: [i64; 5]) -> CurveLW {
        CurveLW::from_ints(c).unwrap()
    }

    #[test]
    fn rt2_j_invariants() {
        assert_eq!(CurveRT2::new(1, 2).unwrap().j_invariant(), rat(1728));
        assert_eq!(
            CurveRT2::new(5, 7).unwrap().j_invariant(),
            ratio(3796416, 1225)
        );
        assert_eq!(
            CurveRT2::new(7, 5).unwrap().j_invariant(),
            CurveRT2::new(5, 7).unwrap().j_invariant()
        );
    }

    #[test]
    fn rt2_rejects_degenerate_data() {
        assert!(CurveRT2::new(0, 3).is_err());
        assert!(CurveRT2::new(3, 0).is_err());
        assert!(CurveRT2::new(4, 4).is_err());
    }

    #[test]
    fn short_form_j_invariants() {
        assert_eq!(j_invariant_sw(&rat(-1), &rat(0)).unwrap(), rat(1728));
        assert_eq!(j_invariant_sw(&rat(0), &rat(1)).unwrap(), rat(0));
        assert_eq!(j_invariant_sw(&rat(6), &rat(-2)).unwrap(), rat(1536));
        assert!(matches!(
            j_invariant_sw(&rat(-3), &rat(2)),
            Err(Error::SingularCurve(_))
        ));
    }

    #[test]
    fn discriminants() {
        assert_eq!(lw([0, 0, 0, -1, 0]).discriminant(), rat(64));
        assert_eq!(lw([0, 0, 0, 0, 1]).discriminant(), rat(-432));
        assert_eq!(CurveRT2::new(1, 2).unwrap().to_lw().discriminant(), rat(64));
        assert_eq!(lw([0, 0, 1, -1, 0]).discriminant(), rat(37));
        assert_eq!(lw([0, 1, 1, 0, 0]).discriminant(), rat(-43));
    }

    #[test]
    fn long_form_j_matches_short_form() {
        assert_eq!(lw([0, 0, 0, 6, -2]).j_invariant(), rat(1536));
        assert_eq!(lw([0, 0, 0, -1, 0]).j_invariant(), rat(1728));
        assert_eq!(lw([0, 0, 0, 0, -1]).j_invariant(), rat(0));
    }

    #[test]
    fn good_reduction_examples() {
        let e = CurveRT2::new(1, 2).unwrap().to_lw();
        assert_eq!(e.good_reduction_at(5), Ok(true));
        assert_eq!(e.good_reduction_at(2), Ok(false));
        assert_eq!(lw([0, 0, 0, -1, 0]).good_reduction_at(3), Ok(true));
        let half = CurveLW::short(ratio(1, 5), rat(1)).unwrap();
        assert_eq!(half.good_reduction_at(5), Err(Error::NotIntegral { p: 5 }));
        assert!(matches!(e.good_reduction_at(4), Err(Error::NotPrime(_))));
    }

    #[test]
    fn singular_model_rejected() {
        assert!(CurveLW::from_ints([0, 0, 0, -3, 2]).is_err());
    }

    #[test]
    fn to_rt2_examples() {
        // (x - 1)(x - 2)(x + 2) = x³ - x² - 4x + 4
        let e = lw([0, -1, 0, -4, 4]);
        assert_eq!(e.to_rt2(), Ok(CurveRT2::new(3, 4).unwrap()));
        assert_eq!(
            lw([0, 0, 0, 6, -2]).to_rt2(),
            Err(NotRt2::NoRationalTwoTorsion)
        );
        assert_eq!(lw([0, 0, 1, -1, 0]).to_rt2(), Err(NotRt2::UnsupportedModel));
        // y² = x³ + 1 has only one rational 2-torsion point
        assert_eq!(
            lw([0, 0, 0, 0, 1]).to_rt2(),
            Err(NotRt2::NoRationalTwoTorsion)
        );
    }

    #[test]
    fn to_rt2_with_rational_roots() {
        // roots 0, 1/2, 3/2
        let e = CurveLW::new([rat(0), ratio(-2, 1), rat(0), ratio(3, 4), rat(0)]).unwrap();
        let c = e.to_rt2().unwrap();
        assert_eq!(
            (c.a().clone(), c.b().clone()),
            (BigInt::from(2), BigInt::from(6))
        );
        assert_eq!(c.j_invariant(), e.j_invariant());
    }

    #[test]
    fn display() {
        assert_eq!(lw([0, 0, 1, -1, 0]).to_string(), "y^2 + y = x^3 - x");
        assert_eq!(lw([0, 0, 0, 6, -2]).to_string(), "y^2 = x^3 + 6x - 2");
    }
}
