//! Prime generation, factorization, exact combinatorics, and the canonical
//! exponent-signature abstraction used by every other module.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative count. Never rounded.
pub type BigCount = BigUint;

/// A smallest-prime-factor sieve up to `limit`.
///
/// Storing the smallest prime factor (rather than a plain primality bitmap)
/// makes factorization of any n <= limit cost O(Omega(n)), which the
/// summatory module leans on heavily.
#[derive(Debug, Clone)]
pub struct PrimeSieve {
    limit: u64,
    primes: Vec<u64>,
    spf: Vec<u32>,
}

/// Builds a [`PrimeSieve`] with a linear sieve.
pub fn build_sieve(limit: u64) -> Result<PrimeSieve> {
    if limit < 2 {
        return Err(Error::InvalidArgument(format!(
            "sieve limit must be >= 2, got {limit}"
        )));
    }
    if limit > u32::MAX as u64 {
        return Err(Error::InvalidArgument(format!(
            "sieve limit {limit} exceeds the supported range (2^32 - 1)"
        )));
    }
    let n = limit as usize;
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u64> = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u64);
        }
        for &p in &primes {
            let p = p as usize;
            if p > spf[i] as usize || i * p > n {
                break;
            }
            spf[i * p] = p as u32;
        }
    }
    Ok(PrimeSieve { limit, primes, spf })
}

impl PrimeSieve {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Ascending list of all primes <= limit.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn prime_count(&self) -> usize {
        self.primes.len()
    }

    /// The k-th prime, 1-based (`nth_prime(1) == 2`).
    pub fn nth_prime(&self, k: usize) -> Result<u64> {
        if k == 0 {
            return Err(Error::InvalidArgument("prime index is 1-based".into()));
        }
        self.primes.get(k - 1).copied().ok_or(Error::Coverage {
            limit: self.limit,
            context: format!("only {} primes available, need p_{k}", self.primes.len()),
        })
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && n <= self.limit && self.spf[n as usize] as u64 == n
    }

    /// Smallest prime factor of n (2 <= n <= limit).
    pub fn smallest_prime_factor(&self, n: u64) -> Result<u64> {
        if n < 2 || n > self.limit {
            return Err(Error::OutOfRange(format!(
                "spf defined for 2 <= n <= {}, got {n}",
                self.limit
            )));
        }
        Ok(self.spf[n as usize] as u64)
    }

    /// Largest prime factor of n, following the spf chain; `None` for n = 1.
    pub fn largest_prime_factor(&self, n: u64) -> Result<Option<u64>> {
        if n == 0 || n > self.limit {
            return Err(Error::OutOfRange(format!(
                "largest_prime_factor defined for 1 <= n <= {}, got {n}",
                self.limit
            )));
        }
        let mut m = n;
        let mut largest = None;
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            largest = Some(largest.map_or(p, |q: u64| q.max(p)));
            m /= p;
        }
        Ok(largest)
    }
}

/// The prime-power decomposition of an integer, with strictly increasing
/// primes. `n = 1` has empty parts and `largest_prime() == None` (no sentinel,
/// so smoothness predicates stay honest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    parts: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// (prime, exponent) pairs with strictly increasing primes.
    pub fn parts(&self) -> &[(u64, u32)] {
        &self.parts
    }

    /// omega(n): number of distinct prime factors.
    pub fn omega(&self) -> u32 {
        self.parts.len() as u32
    }

    /// Omega(n): number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.parts.iter().map(|&(_, e)| e).sum()
    }

    /// P(n): the largest prime factor; `None` for n = 1.
    pub fn largest_prime(&self) -> Option<u64> {
        self.parts.last().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.parts.iter().all(|&(_, e)| e == 1)
    }

    /// Reconstructs n from the parts.
    pub fn product(&self) -> u64 {
        self.parts
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * p.pow(e))
    }

    /// All divisors of n, in no particular order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.parts {
            let prev = divs.len();
            let mut pe = 1u64;
            for _ in 0..e {
                pe *= p;
                for i in 0..prev {
                    divs.push(divs[i] * pe);
                }
            }
        }
        divs
    }
}

/// Factorizes 1 <= n <= sieve.limit via the spf chain.
pub fn factorize(n: u64, sieve: &PrimeSieve) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::InvalidArgument("factorize(0) is undefined".into()));
    }
    if n > sieve.limit {
        return Err(Error::OutOfRange(format!(
            "n = {n} exceeds sieve limit {}",
            sieve.limit
        )));
    }
    let mut parts = Vec::new();
    let mut m = n;
    while m > 1 {
        let p = sieve.spf[m as usize] as u64;
        let mut e = 0u32;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        parts.push((p, e));
    }
    Ok(Factorization { n, parts })
}

/// The non-increasing multiset of prime exponents of an integer; the empty
/// signature represents n = 1. m(n) depends only on this.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentSignature(Vec<u32>);

impl ExponentSignature {
    /// Accepts a non-increasing sequence of positive exponents.
    pub fn new(exps: Vec<u32>) -> Result<Self> {
        if exps.iter().any(|&e| e == 0) {
            return Err(Error::InvalidArgument(
                "signature exponents must be positive".into(),
            ));
        }
        if exps.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(
                "signature exponents must be non-increasing".into(),
            ));
        }
        Ok(ExponentSignature(exps))
    }

    /// Sorts the exponents into canonical (non-increasing) order, dropping
    /// zeros.
    pub fn from_unsorted(mut exps: Vec<u32>) -> Self {
        exps.retain(|&e| e > 0);
        exps.sort_unstable_by(|a, b| b.cmp(a));
        ExponentSignature(exps)
    }

    pub fn empty() -> Self {
        ExponentSignature(Vec::new())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// omega: number of parts.
    pub fn omega(&self) -> u32 {
        self.0.len() as u32
    }

    /// Omega: sum of the exponents.
    pub fn big_omega(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The smallest integer with this signature (exponents assigned to the
    /// smallest primes in decreasing order), as a big integer.
    pub fn smallest_integer(&self, sieve: &PrimeSieve) -> Result<BigCount> {
        let mut n = BigCount::one();
        for (i, &e) in self.0.iter().enumerate() {
            let p = sieve.nth_prime(i + 1)?;
            n *= BigCount::from(p).pow(e);
        }
        Ok(n)
    }
}

impl std::fmt::Display for ExponentSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Discards the primes of a factorization, keeping the sorted exponents.
pub fn signature_of(f: &Factorization) -> ExponentSignature {
    ExponentSignature::from_unsorted(f.parts.iter().map(|&(_, e)| e).collect())
}

/// Exact binomial coefficient, 0 when k > n.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut c = BigCount::one();
    for i in 0..k {
        c *= BigCount::from(n - i);
        c /= BigCount::from(i + 1); // exact: C(n, i+1) is an integer
    }
    c
}

/// p(n): number of integer partitions of n, via Euler's pentagonal-number
/// recurrence (p(0) = 1). Exact and O(n^{3/2}) big-digit additions.
pub fn partition_count(n: u64) -> BigCount {
    let n = n as usize;
    let mut table: Vec<BigUint> = Vec::with_capacity(n + 1);
    table.push(BigUint::one());
    for i in 1..=n {
        let mut acc = num_bigint::BigInt::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let mut term = num_bigint::BigInt::from(table[i - g1].clone());
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= i {
                term += num_bigint::BigInt::from(table[i - g2].clone());
            }
            if sign > 0 {
                acc += term;
            } else {
                acc -= term;
            }
            k += 1;
        }
        let (sign, mag) = acc.into_parts();
        debug_assert_ne!(sign, num_bigint::Sign::Minus);
        table.push(mag);
    }
    table.pop().unwrap()
}
