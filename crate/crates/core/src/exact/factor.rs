//! Squarefree decomposition of integers by bounded trial division.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::ExactError;

/// Trial divisors are tried up to this bound. A cofactor left over after the
/// bound is accepted only when it is provably prime (smaller than bound²).
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Splits `n > 0` as `root² · Π primes`, the primes distinct and ascending.
pub fn squarefree_split(n: &BigUint, bound: u64) -> Result<(BigUint, Vec<u64>), ExactError> {
    assert!(!n.is_zero(), "squarefree_split of zero");
    let mut rem = n.clone();
    let mut root = BigUint::one();
    let mut primes = Vec::new();
    let mut d: u64 = 2;
    loop {
        let dd = BigUint::from(d) * d;
        if dd > rem {
            break;
        }
        if d > bound {
            return Err(ExactError::RadicandTooLarge(n.to_string()));
        }
        let big_d = BigUint::from(d);
        let mut count = 0u32;
        loop {
            let (q, r) = rem.div_rem(&big_d);
            if !r.is_zero() {
                break;
            }
            rem = q;
            count += 1;
        }
        if count > 0 {
            root *= big_d.pow(count / 2);
            if count % 2 == 1 {
                primes.push(d);
            }
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    if !rem.is_one() {
        // rem is prime here and below bound², so it fits comfortably
        let p = rem
            .to_u64()
            .ok_or_else(|| ExactError::RadicandTooLarge(n.to_string()))?;
        primes.push(p);
        primes.sort_unstable();
    }
    Ok((root, primes))
}

/// Squarefree part of `n`, or an error past the trial bound.
pub fn squarefree_part(n: &BigUint) -> Result<(BigUint, BigUint), ExactError> {
    let (root, primes) = squarefree_split(n, DEFAULT_TRIAL_BOUND)?;
    let core = primes.iter().fold(BigUint::one(), |acc, p| acc * *p);
    Ok((root, core))
}

/// Refines a list of positive integers into a pairwise coprime base such that
/// every input is a product of base elements (all inputs squarefree).
pub fn coprime_base(inputs: &[BigUint]) -> Vec<BigUint> {
    let mut base: Vec<BigUint> = inputs.iter().filter(|x| !x.is_one()).cloned().collect();
    base.sort();
    base.dedup();
    'outer: loop {
        for i in 0..base.len() {
            for j in (i + 1)..base.len() {
                let g = base[i].gcd(&base[j]);
                if !g.is_one() {
                    let a = &base[i] / &g;
                    let b = &base[j] / &g;
                    let mut next: Vec<BigUint> = base
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i && *k != j)
                        .map(|(_, x)| x.clone())
                        .collect();
                    next.extend([a, b, g].into_iter().filter(|x| !x.is_one()));
                    next.sort();
                    next.dedup();
                    base = next;
                    continue 'outer;
                }
            }
        }
        return base;
    }
}
