mod common;

use kummer_brauer::arith::SquareClass;
use kummer_brauer::residue::{build_residue_matrix, Algebra, Line, ResidueMatrix, Root};
use proptest::prelude::*;

fn nonzero(range: i64) -> impl Strategy<Value = i64> {
    (-range..=range).prop_filter("nonzero", |v| *v != 0)
}

fn pair() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (nonzero(2000), nonzero(2000), nonzero(2000), nonzero(2000))
        .prop_filter("distinct", |(a, b, a2, b2)| a != b && a2 != b2)
}

fn roots() -> impl Strategy<Value = [i64; 3]> {
    [-80i64..=80, -80i64..=80, -80i64..=80]
        .prop_filter("distinct", |r| r[0] != r[1] && r[1] != r[2] && r[0] != r[2])
}

fn subset(mask: usize) -> Vec<Algebra> {
    Algebra::ALL
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, a)| a)
        .collect()
}

/// Subsets of the four algebras whose total residue is trivial, by trying
/// all sixteen.
fn trivial_subsets(m: &ResidueMatrix) -> Vec<usize> {
    (0..16)
        .filter(|&mask| {
            m.product_of_rows(&subset(mask))
                .iter()
                .all(SquareClass::is_identity)
        })
        .collect()
}

fn mask_of(algebras: &[Algebra]) -> usize {
    algebras
        .iter()
        .map(|&a| 1 << a as usize)
        .fold(0, |x, y| x ^ y)
}

/// The F₂-span of the masks.
fn span(basis: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = (0..1usize << basis.len())
        .map(|sel| {
            basis
                .iter()
                .enumerate()
                .filter(|(i, _)| sel >> i & 1 == 1)
                .fold(0, |acc, (_, m)| acc ^ m)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn symmetric_with_trivial_diagonal((a, b, a2, b2) in pair()) {
        let m = build_residue_matrix(a, b, a2, b2).unwrap();
        prop_assert!(m.has_trivial_diagonal());
        prop_assert!(m.is_symmetric());
    }

    #[test]
    fn nine_columns_do_not_cut_the_kernel((a, b, a2, b2) in pair()) {
        let m = build_residue_matrix(a, b, a2, b2).unwrap();
        let nine = m.extend_to_nine();
        prop_assert_eq!(m.kernel().d, nine.kernel().d);
        for alg in Algebra::ALL {
            for fixed in Root::ALL {
                let mut row = SquareClass::identity();
                let mut col = SquareClass::identity();
                for other in Root::ALL {
                    row = &row * nine.entry(alg, Line::new(fixed, other)).unwrap();
                    col = &col * nine.entry(alg, Line::new(other, fixed)).unwrap();
                }
                prop_assert!(row.is_identity() && col.is_identity());
            }
        }
    }

    #[test]
    fn kernel_matches_subset_enumeration((a, b, a2, b2) in pair()) {
        let m = build_residue_matrix(a, b, a2, b2).unwrap();
        let k = m.kernel();
        let basis: Vec<usize> = k.basis.iter().map(|v| mask_of(v)).collect();
        prop_assert_eq!(span(&basis), trivial_subsets(&m));
        prop_assert_eq!(1usize << k.d, trivial_subsets(&m).len());
    }

    #[test]
    fn translation_invariance(first in roots(), second in roots()) {
        let ds = common::d_over_labelings(first, second);
        prop_assert!(ds.iter().all(|&d| d == ds[0]), "d over labelings: {:?}", ds);
    }

    #[test]
    fn swapping_factors_preserves_d((a, b, a2, b2) in pair()) {
        let d = build_residue_matrix(a, b, a2, b2).unwrap().kernel().d;
        prop_assert_eq!(d, build_residue_matrix(a2, b2, a, b).unwrap().kernel().d);
    }
}

#[test]
fn squared_split_curve_kernel() {
    let m = build_residue_matrix(1, 5, 1, 5).unwrap();
    assert_eq!(m.kernel().d, 1);
    assert_eq!(
        trivial_subsets(&m),
        vec![0, mask_of(&[Algebra::A0, Algebra::ZeroA])]
    );
}
