//! Small integer helpers: primality, prime divisors, prime sets.

use serde::{Deserialize, Serialize};
use std::fmt;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`, ascending. `prime_divisors(1)` is empty.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// `Some(p)` when `n = p^k` with `k >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match prime_divisors(n).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

pub fn is_power_of(n: u64, p: u64) -> bool {
    n >= 1 && p_part(n, p) == n
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Powers `d = p^k` with `1 < d < bound`.
pub fn proper_prime_powers(p: u64, bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = p;
    while d < bound {
        out.push(d);
        d *= p;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimeSetRole {
    PiOfGroup,
    PiOfSection,
    Parameter,
}

/// A sorted set of primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl PrimeSet {
    pub fn new(mut primes: Vec<u64>) -> Self {
        primes.sort_unstable();
        primes.dedup();
        PrimeSet { primes }
    }

    pub fn empty() -> Self {
        PrimeSet { primes: Vec::new() }
    }

    /// π(n): the primes dividing `n`.
    pub fn of(n: u64) -> Self {
        PrimeSet {
            primes: prime_divisors(n),
        }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Whether every prime divisor of `n` lies in the set.
    pub fn is_pi_number(&self, n: u64) -> bool {
        n >= 1 && prime_divisors(n).into_iter().all(|q| self.contains(q))
    }

    pub fn without(&self, p: u64) -> Self {
        PrimeSet {
            primes: self.primes.iter().copied().filter(|&q| q != p).collect(),
        }
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}
