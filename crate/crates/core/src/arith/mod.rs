//! Exact arithmetic over Q: factorization, valuations, the square-class
//! group Q*/Q*², and linear algebra over F₂.

mod bitmatrix;
mod factor;
mod rational;
mod square_class;

pub use bitmatrix::{BitMatrix, BitVector};
pub use factor::{factor, is_prime, is_prime_u64, primes_up_to, Factorization};
pub(crate) use rational::mul_mod;
pub use rational::{
    format_rational, is_integer, parse_rational, rat, ratio, rational_sqrt, reduce_mod, valuation,
    valuation_big, Rational,
};
pub use square_class::SquareClass;
