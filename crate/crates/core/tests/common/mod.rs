//! Helpers shared by the integration tests. Each test binary uses a subset.
#![allow(dead_code)]

use std::path::PathBuf;

use kummer_brauer::residue::build_residue_matrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Affine points on `y² + a1xy + a3y = x³ + a2x² + a4x + a6` over `F_p`,
/// plus infinity, by testing every pair. Written without the library so it
/// can serve as an oracle.
pub fn brute_force_count(coeffs: [i64; 5], p: i64) -> i64 {
    let [a1, a2, a3, a4, a6] = coeffs.map(|c| c.rem_euclid(p));
    let mut n = 1;
    for x in 0..p {
        let rhs = (((x + a2) * x % p + a4) * x + a6) % p;
        for y in 0..p {
            let lhs = (y * y + a1 * x % p * y + a3 * y) % p;
            if lhs == rhs {
                n += 1;
            }
        }
    }
    n
}

/// Discriminant of an integral Weierstrass model, in i128.
pub fn discriminant(coeffs: [i64; 5]) -> i128 {
    let [a1, a2, a3, a4, a6] = coeffs.map(i128::from);
    let b2 = a1 * a1 + 4 * a2;
    let b4 = 2 * a4 + a1 * a3;
    let b6 = a3 * a3 + 4 * a6;
    let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
}

/// Three distinct integer roots in `[-range, range]`.
pub fn distinct_roots(rng: &mut ChaCha8Rng, range: i64) -> [i64; 3] {
    loop {
        let r = [(); 3].map(|_| rng.gen_range(-range..=range));
        if r[0] != r[1] && r[1] != r[2] && r[0] != r[2] {
            return r;
        }
    }
}

/// Nonzero distinct `(a, b)` in `[-range, range]`.
pub fn rt2_params(rng: &mut ChaCha8Rng, range: i64) -> (i64, i64) {
    loop {
        let a = rng.gen_range(-range..=range);
        let b = rng.gen_range(-range..=range);
        if a != 0 && b != 0 && a != b {
            return (a, b);
        }
    }
}

/// The six `(a, b)` obtained by moving one root to zero and ordering the
/// other two.
pub fn labelings(roots: [i64; 3]) -> Vec<(i64, i64)> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    PERMS
        .iter()
        .map(|&[i, j, k]| (roots[j] - roots[i], roots[k] - roots[i]))
        .collect()
}

/// `d` for every one of the 36 labelings of a pair of root sets.
pub fn d_over_labelings(first: [i64; 3], second: [i64; 3]) -> Vec<usize> {
    let mut out = Vec::new();
    for (a, b) in labelings(first) {
        for (a2, b2) in labelings(second) {
            out.push(build_residue_matrix(a, b, a2, b2).unwrap().kernel().d);
        }
    }
    out
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub const GOLDEN_SURFACES: [&str; 5] = [
    "six_torsion_partner",
    "conductors_37_43",
    "j1536_squared",
    "roots_1_2_m2_squared",
    "roots_m1_m2_3_squared",
];
