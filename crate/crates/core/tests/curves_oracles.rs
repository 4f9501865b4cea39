mod common;

use kummer_brauer::arith::{factor, rat, Rational, SquareClass};
use kummer_brauer::curves::{
    count_points, frobenius_table, j_invariant_sw, rt2_from_roots, within_hasse_bound, CurveLW,
    CurveRT2,
};
use num_bigint::BigInt;
use proptest::prelude::*;

use common::{brute_force_count, discriminant};

fn coeffs() -> impl Strategy<Value = [i64; 5]> {
    [
        -20i64..=20,
        -20i64..=20,
        -20i64..=20,
        -20i64..=20,
        -20i64..=20,
    ]
    .prop_filter("nonsingular", |c| discriminant(*c) != 0)
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![
        2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
    ])
}

fn q(n: i64) -> Rational {
    rat(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn counts_match_brute_force(c in coeffs(), p in small_prime()) {
        prop_assume!(discriminant(c) % p as i128 != 0);
        let curve = CurveLW::from_ints(c).unwrap();
        prop_assert_eq!(count_points(&curve, p).unwrap() as i64, brute_force_count(c, p as i64));
    }

    #[test]
    fn hasse_bound(c in coeffs()) {
        let curve = CurveLW::from_ints(c).unwrap();
        for (p, a) in frobenius_table(&curve, 200).iter() {
            prop_assert!(within_hasse_bound(p, a), "a_{} = {}", p, a);
        }
    }

    #[test]
    fn j_formulas_agree(a in -5000i64..5000, b in -5000i64..5000) {
        prop_assume!(a != 0 && b != 0 && a != b);
        let c2 = q(-(a + b));
        let c1 = q(a * b);
        let p = &c1 - &c2 * &c2 / q(3);
        let qq = q(2) * &c2 * &c2 * &c2 / q(27) - &c1 * &c2 / q(3);
        prop_assert_eq!(j_invariant_sw(&p, &qq).unwrap(), CurveRT2::new(a, b).unwrap().j_invariant());
    }

    #[test]
    fn root_choice_does_not_change_j(r in [-300i64..300, -300i64..300, -300i64..300]) {
        prop_assume!(r[0] != r[1] && r[1] != r[2] && r[0] != r[2]);
        let js: Vec<Rational> = common::labelings(r)
            .into_iter()
            .map(|(a, b)| CurveRT2::new(a, b).unwrap().j_invariant())
            .collect();
        prop_assert!(js.iter().all(|j| *j == js[0]));
        let direct = rt2_from_roots(&q(r[0]), &q(r[1]), &q(r[2])).unwrap();
        prop_assert_eq!(direct.j_invariant(), js[0].clone());
    }

    #[test]
    fn to_rt2_preserves_j(a in -400i64..400, b in -400i64..400, s in -50i64..50) {
        prop_assume!(a != 0 && b != 0 && a != b);
        // y² = (x − s)(x − s − a)(x − s − b), expanded
        let (r0, r1, r2) = (s, s + a, s + b);
        let c = [0, -(r0 + r1 + r2), 0, r0 * r1 + r1 * r2 + r0 * r2, -r0 * r1 * r2];
        let curve = CurveLW::from_ints(c).unwrap();
        let rt2 = curve.to_rt2().unwrap();
        prop_assert_eq!(rt2.j_invariant(), curve.j_invariant());
    }

    #[test]
    fn factorization_multiplies_back(n in prop::num::i64::ANY) {
        prop_assume!(n != 0);
        let n = BigInt::from(n);
        prop_assert_eq!(factor(&n).unwrap().value(), n);
    }

    #[test]
    fn square_classes_form_a_group(x in 1i64..100_000, y in 1i64..100_000, sx: bool, sy: bool) {
        let x = if sx { -x } else { x };
        let y = if sy { -y } else { y };
        let cx = SquareClass::of_i64(x).unwrap();
        let cy = SquareClass::of_i64(y).unwrap();
        prop_assert_eq!(&cx * &cy, SquareClass::of_i64(x * y).unwrap());
        prop_assert!((&cx * &cx).is_identity());
        prop_assert!(SquareClass::of_i64(x * x).unwrap().is_identity());
    }
}

#[test]
fn named_j_invariants() {
    assert_eq!(j_invariant_sw(&q(6), &q(-2)).unwrap(), q(1536));
    assert_eq!(CurveRT2::new(1, 2).unwrap().j_invariant(), q(1728));
    assert_eq!(
        CurveLW::from_ints([0, 0, 0, 0, 1]).unwrap().j_invariant(),
        q(0)
    );
}
