//! Integer factorization: trial division by the primes below 10⁶, then
//! Brent's variant of Pollard rho on whatever cofactor is left, with a
//! Miller–Rabin test deciding when to stop splitting.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::mul_mod;
use crate::error::{Error, Result};

const TRIAL_LIMIT: u32 = 1_000_000;

/// Miller–Rabin bases. The first thirteen make the test exact below
/// 3.3·10²⁴; the remaining ones only matter for larger inputs.
const MR_BASES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        primes_up_to(TRIAL_LIMIT as u64)
            .into_iter()
            .map(|p| p as u32)
            .collect()
    })
}

/// All primes `p <= n`, by a sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Deterministic Miller–Rabin on machine words.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES[..12] {
        let p = p as u64;
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES[..12] {
        let mut x = super::rational::pow_mod(a as u64, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality test; exact for every input below 3.3·10²⁴.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &MR_BASES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `sign · ∏ pᵉ` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    sign: Sign,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    /// `+1` or `-1`.
    pub fn sign(&self) -> i8 {
        if self.sign == Sign::Minus {
            -1
        } else {
            1
        }
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> BigInt {
        let mag = self
            .factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        BigInt::from_biguint(
            if self.sign == Sign::Minus {
                Sign::Minus
            } else {
                Sign::Plus
            },
            mag,
        )
    }

    /// Every positive divisor, in increasing order.
    pub fn divisors(&self) -> Vec<BigUint> {
        let mut divs = vec![BigUint::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
            for d in &divs {
                let mut pk = d.clone();
                next.push(pk.clone());
                for _ in 0..*e {
                    pk *= p;
                    next.push(pk.clone());
                }
            }
            divs = next;
        }
        divs.sort();
        divs
    }
}

/// Factors a nonzero integer.
pub fn factor(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sign = if n.sign() == Sign::Minus {
        Sign::Minus
    } else {
        Sign::Plus
    };
    let mut rest = n.magnitude().clone();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();

    let mut bound = rest.sqrt().to_u64();
    for &p in small_primes() {
        if rest.is_one() {
            break;
        }
        if let Some(b) = bound {
            if p as u64 > b {
                break;
            }
        }
        let mut e = 0u32;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((BigUint::from(p), e));
            bound = rest.sqrt().to_u64();
        }
    }

    if !rest.is_one() {
        let mut large = Vec::new();
        split_into(&rest, &mut large);
        large.sort();
        let mut iter = large.into_iter().peekable();
        while let Some(p) = iter.next() {
            let mut e = 1u32;
            while iter.peek() == Some(&p) {
                iter.next();
                e += 1;
            }
            factors.push((p, e));
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Factorization { sign, factors })
}

/// Pushes the prime factors (with repetition) of `n`, which has no prime
/// factor below the trial-division limit.
fn split_into(n: &BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    let limit = BigUint::from(TRIAL_LIMIT as u64 * TRIAL_LIMIT as u64);
    if *n < limit || is_prime(n) {
        out.push(n.clone());
        return;
    }
    if let Some(r) = perfect_square_root(n) {
        split_into(&r, out);
        split_into(&r, out);
        return;
    }
    let d = pollard_brent(n);
    let q = n / &d;
    split_into(&d, out);
    split_into(&q, out);
}

fn perfect_square_root(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Returns a nontrivial divisor of the odd composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    const BLOCK: u64 = 128;
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |v: &BigUint| (v * v + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut r: u64 = 1;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BLOCK.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BLOCK;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
    }
    unreachable!("pollard rho exhausted its constants")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors()
            .iter()
            .map(|(p, e)| (p.to_u64().unwrap(), *e))
            .collect()
    }

    #[test]
    fn one_has_empty_factorization() {
        let f = factor(&int(1)).unwrap();
        assert_eq!(f.sign(), 1);
        assert!(f.factors().is_empty());
    }

    #[test]
    fn negative_fifty() {
        let f = factor(&int(-50)).unwrap();
        assert_eq!(f.sign(), -1);
        assert_eq!(pairs(&f), vec![(2, 1), (5, 2)]);
    }

    #[test]
    fn forty_nine_hundred() {
        let f = factor(&int(4900)).unwrap();
        assert_eq!(f.sign(), 1);
        assert_eq!(pairs(&f), vec![(2, 2), (5, 2), (7, 2)]);
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(factor(&int(0)), Err(Error::ZeroInput));
    }

    #[test]
    fn large_semiprime_goes_through_rho() {
        // 1000003 · 1000033 · 1000037, all above the trial-division limit.
        let p: BigInt = int(1_000_003) * int(1_000_033) * int(1_000_037);
        let f = factor(&p).unwrap();
        assert_eq!(
            pairs(&f),
            vec![(1_000_003, 1), (1_000_033, 1), (1_000_037, 1)]
        );
        let sq: BigInt = int(1_000_003) * int(1_000_003) * int(7);
        assert_eq!(pairs(&factor(&sq).unwrap()), vec![(7, 1), (1_000_003, 2)]);
    }

    #[test]
    fn cm_j_invariant_factors() {
        // -640320³
        let j: BigInt = "-262537412640768000".parse().unwrap();
        let f = factor(&j).unwrap();
        assert_eq!(pairs(&f), vec![(2, 18), (3, 3), (5, 3), (23, 3), (29, 3)]);
        assert_eq!(f.value(), j);
    }

    #[test]
    fn primality_matches_sieve() {
        let sieve: std::collections::HashSet<u64> = primes_up_to(5000).into_iter().collect();
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), sieve.contains(&n), "n = {n}");
        }
        // strong pseudoprime to bases 2..37 is still caught
        let psp: BigUint = "3825123056546413051".parse().unwrap();
        assert!(!is_prime(&psp));
        assert!(!is_prime_u64(3825123056546413051));
        assert!(is_prime_u64(18446744073709551557));
    }

    #[test]
    fn divisors_of_twelve() {
        let d: Vec<u64> = factor(&int(12))
            .unwrap()
            .divisors()
            .iter()
            .map(|d| d.to_u64().unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }
}
