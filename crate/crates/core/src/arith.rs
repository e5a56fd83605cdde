//! Small exact integer helpers: factorization, primality, totient.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn is_unit(x: u64, m: u64) -> bool {
    x.gcd(&m) == 1
}

/// Number of derangements of `k` items, `!0 = 1`, `!1 = 0`.
pub fn subfactorial(k: u32) -> Result<u128> {
    let (mut prev, mut cur) = (1u128, 0u128);
    if k == 0 {
        return Ok(1);
    }
    for i in 2..=k as u128 {
        let next = (i - 1)
            .checked_mul(cur.checked_add(prev).ok_or(Error::Overflow)?)
            .ok_or(Error::Overflow)?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(45), vec![(3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn totient() {
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(15), 8);
    }

    #[test]
    fn totient_matches_gcd_scan() {
        for n in 1..300u64 {
            let scan = (1..=n).filter(|&a| a.gcd(&n) == 1).count() as u64;
            assert_eq!(euler_phi(n), scan, "n = {n}");
        }
    }

    #[test]
    fn derangements() {
        let known = [1u128, 0, 1, 2, 9, 44, 265, 1854, 14833];
        for (k, &v) in known.iter().enumerate() {
            assert_eq!(subfactorial(k as u32).unwrap(), v);
        }
        assert!(subfactorial(40).is_err());
    }

    #[test]
    fn derangements_match_permutation_scan() {
        fn count(k: usize) -> u128 {
            fn rec(pos: usize, used: &mut Vec<bool>, k: usize) -> u128 {
                if pos == k {
                    return 1;
                }
                let mut total = 0;
                for v in 0..k {
                    if v != pos && !used[v] {
                        used[v] = true;
                        total += rec(pos + 1, used, k);
                        used[v] = false;
                    }
                }
                total
            }
            rec(0, &mut vec![false; k], k)
        }
        for k in 0..8 {
            assert_eq!(subfactorial(k as u32).unwrap(), count(k));
        }
    }
}
