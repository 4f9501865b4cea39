//! Brauer groups of Kummer surfaces `X = Kum(E × E')` over Q.
//!
//! The 2-primary part of `Br(X)/Br(Q)` is computed from the residues of four
//! quaternion algebras ([`residue`]) together with the rank of
//! `Hom(Ē, Ē')` ([`rank`]). Odd primes are handled by certificates that make
//! `Br(Ā)^Γ` vanish ([`certificates`]). [`report`] ties the pieces into one
//! analysis with a machine-checkable verdict.
//!
//! ```
//! use kummer_brauer::report::{analyze, Conclusion, CurvePairSpec, CurveRecord};
//!
//! let spec = CurvePairSpec::new(CurveRecord::rt2(5, 7), CurveRecord::rt2(1, 2));
//! let report = analyze(&spec).unwrap();
//! assert_eq!(report.conclusion, Conclusion::Trivial);
//! ```
//!
//! The guide in `book/` walks through each layer; its code blocks run as
//! doctests of this crate.

pub mod arith;
pub mod certificates;
pub mod curves;
pub mod error;
pub mod rank;
pub mod report;
pub mod residue;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/square-classes.md")]
    mod square_classes {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/residues.md")]
    mod residues {}
    #[doc = include_str!("../../../book/src/rank-and-gate.md")]
    mod rank_and_gate {}
    #[doc = include_str!("../../../book/src/odd-primes.md")]
    mod odd_primes {}
    #[doc = include_str!("../../../book/src/reports.md")]
    mod reports {}
}
