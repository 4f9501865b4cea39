use num_traits::Zero;

use super::model::CurveLW;
use crate::arith::{rat, Rational};
use crate::error::{Error, Result};

/// A rational point on a long Weierstrass model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Point {
    Infinity,
    Affine(Rational, Rational),
}

impl CurveLW {
    pub fn point(&self, x: Rational, y: Rational) -> Result<Point> {
        if !self.contains_point(&x, &y) {
            return Err(Error::PointNotOnCurve {
                x: x.to_string(),
                y: y.to_string(),
            });
        }
        Ok(Point::Affine(x, y))
    }

    pub fn negate(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), -y - &self.a1 * x - &self.a3),
        }
    }

    pub fn add(&self, p: &Point, q: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        if *q == self.negate(p) {
            return Point::Infinity;
        }
        let lambda = if x1 == x2 {
            let num = rat(3) * x1 * x1 + rat(2) * &self.a2 * x1 + &self.a4 - &self.a1 * y1;
            let den = rat(2) * y1 + &self.a1 * x1 + &self.a3;
            debug_assert!(!den.is_zero());
            num / den
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &lambda * &lambda + &self.a1 * &lambda - &self.a2 - x1 - x2;
        let y3 = -(&lambda + &self.a1) * &x3 - (y1 - &lambda * x1) - &self.a3;
        Point::Affine(x3, y3)
    }

    /// The order of `p` if it is at most `limit`.
    pub fn order_up_to(&self, p: &Point, limit: u32) -> Option<u32> {
        let mut acc = p.clone();
        for n in 1..=limit {
            if acc == Point::Infinity {
                return Some(n);
            }
            acc = self.add(&acc, p);
        }
        None
    }
}
