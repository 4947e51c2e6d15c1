//! Deterministic segmented sieve of Eratosthenes.
//!
//! There is no probabilistic fallback: requests above the configured limit
//! are refused.

use crate::error::{Error, Result};

pub const DEFAULT_SIEVE_LIMIT: u64 = 1_000_000_000;

const SEGMENT: u64 = 1 << 18;

/// Trial division; meant for the small moduli (degrees, characteristics)
/// passed in by callers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

fn small_primes_upto(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn check_limit(x: u64, limit: u64) -> Result<()> {
    if x > limit {
        return Err(Error::ResourceLimit(format!(
            "sieve bound {x} exceeds the sieve limit {limit}"
        )));
    }
    Ok(())
}

/// Calls `f` on every prime `< x` in ascending order.
pub fn for_each_prime_below(x: u64, limit: u64, mut f: impl FnMut(u64)) -> Result<()> {
    check_limit(x, limit)?;
    if x <= 2 {
        return Ok(());
    }
    let base = small_primes_upto((x as f64).sqrt() as u64 + 1);
    let mut marks = vec![false; SEGMENT as usize];
    let mut lo = 2u64;
    while lo < x {
        let hi = (lo + SEGMENT).min(x);
        let len = (hi - lo) as usize;
        marks[..len].fill(false);
        for &p in &base {
            if p * p >= hi {
                break;
            }
            let start = (p * p).max(lo.div_ceil(p) * p);
            let mut m = start;
            while m < hi {
                marks[(m - lo) as usize] = true;
                m += p;
            }
        }
        for (i, &c) in marks[..len].iter().enumerate() {
            if !c {
                f(lo + i as u64);
            }
        }
        lo = hi;
    }
    Ok(())
}

/// All primes `< x`, ascending. Errors when `x` is above `limit`.
pub fn primes_below_with_limit(x: u64, limit: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for_each_prime_below(x, limit, |p| out.push(p))?;
    Ok(out)
}

pub fn primes_below(x: u64) -> Result<Vec<u64>> {
    primes_below_with_limit(x, DEFAULT_SIEVE_LIMIT)
}

pub fn count_primes_below(x: u64, limit: u64) -> Result<u64> {
    let mut n = 0;
    for_each_prime_below(x, limit, |_| n += 1)?;
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(primes_below(10).unwrap(), vec![2, 3, 5, 7]);
        let p = primes_below(141).unwrap();
        assert_eq!(p.len(), 34);
        assert_eq!(*p.last().unwrap(), 139);
        assert!(primes_below(2).unwrap().is_empty());
        assert!(primes_below(0).unwrap().is_empty());
        assert_eq!(primes_below(3).unwrap(), vec![2]);
    }

    #[test]
    fn limit_is_enforced() {
        assert!(matches!(
            primes_below(DEFAULT_SIEVE_LIMIT + 1),
            Err(Error::ResourceLimit(_))
        ));
        assert!(primes_below_with_limit(100, 50).is_err());
    }

    #[test]
    fn agrees_with_trial_division_across_segments() {
        let x = 3 * SEGMENT + 17;
        let sieved = primes_below(x).unwrap();
        let brute: Vec<u64> = (0..x).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, brute);
    }

    #[test]
    fn known_counts() {
        assert_eq!(count_primes_below(1_000_000, DEFAULT_SIEVE_LIMIT).unwrap(), 78_498);
        assert_eq!(count_primes_below(10_000_000, DEFAULT_SIEVE_LIMIT).unwrap(), 664_579);
    }
}
