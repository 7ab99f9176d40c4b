//! The ordered-factorization counting function m(n), m_k(n) and m(lambda),
//! computed by every formula the problem admits plus a brute-force
//! definitional oracle and the perfect-partition bijection.
//!
//! Conventions: m(1) is 0 by the bare definition but 1 for the recurrences
//! and the signature DP; the Möbius recurrence needs m(1) = 1/2 internally.
//! [`Convention`] makes the choice explicit at the call sites that care.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, factorize, signature_of, BigCount, ExponentSignature, PrimeSieve};
use crate::error::{Error, Result};

/// Default node budget for the exponential enumerations.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// The value assigned to m(1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// m(1) = 0: the bare definition (no factorization of 1 into parts > 1).
    ZeroAtOne,
    /// m(1) = 1: the empty factorization; the recurrence seed and the first
    /// term of the catalogued sequence. Default everywhere.
    #[default]
    OneAtOne,
}

impl Convention {
    fn at_one(self) -> BigCount {
        match self {
            Convention::ZeroAtOne => BigCount::zero(),
            Convention::OneAtOne => BigCount::one(),
        }
    }
}

/// An m-value together with the input it counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MValue {
    pub input: MInput,
    pub value: BigCount,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MInput {
    Integer(u64),
    Signature(ExponentSignature),
}

impl std::fmt::Display for MInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MInput::Integer(n) => write!(f, "{n}"),
            MInput::Signature(sig) => write!(f, "{sig}"),
        }
    }
}

/// Memo table for the signature DP, keyed by canonical signatures only.
///
/// Concurrent readers share the map; a writer inserts a fully computed value
/// or nothing. Duplicated work between racing writers is allowed, torn
/// entries are not.
#[derive(Debug, Default)]
pub struct MemoCache {
    map: RwLock<HashMap<ExponentSignature, BigCount>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl MemoCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, sig: &ExponentSignature) -> Option<BigCount> {
        let found = self.map.read().expect("memo lock poisoned").get(sig).cloned();
        match found {
            Some(v) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(v)
            }
            None => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    pub fn insert(&self, sig: ExponentSignature, value: BigCount) {
        self.map
            .write()
            .expect("memo lock poisoned")
            .insert(sig, value);
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("memo lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    /// Entries sorted by signature, for persistence.
    pub fn snapshot(&self) -> Vec<(ExponentSignature, BigCount)> {
        let mut entries: Vec<_> = self
            .map
            .read()
            .expect("memo lock poisoned")
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        entries
    }

    pub fn extend<I: IntoIterator<Item = (ExponentSignature, BigCount)>>(&self, entries: I) {
        let mut map = self.map.write().expect("memo lock poisoned");
        for (k, v) in entries {
            map.insert(k, v);
        }
    }
}

struct Budget {
    remaining: u64,
    budget: u64,
    context: &'static str,
}

impl Budget {
    fn new(budget: u64, context: &'static str) -> Self {
        Budget {
            remaining: budget,
            budget,
            context,
        }
    }

    fn spend(&mut self) -> Result<()> {
        if self.remaining == 0 {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
                context: self.context,
            });
        }
        self.remaining -= 1;
        Ok(())
    }
}

/// Brute-force definitional count: explicit recursion over the first factor,
/// no memoization, one budget node per call. The independent oracle every
/// other algorithm is checked against.
pub fn m_oracle(n: u64, convention: Convention, budget: u64) -> Result<BigCount> {
    if n == 0 {
        return Err(Error::InvalidArgument("m(0) is undefined".into()));
    }
    if n == 1 {
        return Ok(convention.at_one());
    }
    let mut budget = Budget::new(budget, "m_oracle");
    fn ways(x: u64, budget: &mut Budget) -> Result<BigCount> {
        budget.spend()?;
        if x == 1 {
            return Ok(BigCount::one());
        }
        let mut total = BigCount::zero();
        // enumerate divisors d > 1 of x by trial division
        let mut d = 2u64;
        while d * d <= x {
            if x % d == 0 {
                total += ways(x / d, budget)?;
                if d != x / d {
                    total += ways(d, budget)?;
                }
            }
            d += 1;
        }
        total += BigCount::one(); // the single-part factorization x = x
        Ok(total)
    }
    ways(n, &mut budget)
}

/// m(n) by the divisor recurrence m(n) = sum_{d|n, d<n} m(d), seeded with
/// m(1) = 1, memoized over the divisor lattice of n.
pub fn m_divrec(n: u64, sieve: &PrimeSieve) -> Result<BigCount> {
    if n == 0 {
        return Err(Error::InvalidArgument("m(0) is undefined".into()));
    }
    let mut memo: HashMap<u64, BigCount> = HashMap::new();
    fn rec(x: u64, sieve: &PrimeSieve, memo: &mut HashMap<u64, BigCount>) -> Result<BigCount> {
        if x == 1 {
            return Ok(BigCount::one());
        }
        if let Some(v) = memo.get(&x) {
            return Ok(v.clone());
        }
        let mut total = BigCount::zero();
        for d in factorize(x, sieve)?.divisors() {
            if d < x {
                total += rec(d, sieve, memo)?;
            }
        }
        memo.insert(x, total.clone());
        Ok(total)
    }
    rec(n, sieve, &mut memo)
}

/// m(n) by the Möbius-inverted recurrence
/// m(n) = 2 (sum_i m(n/q_i) - sum_{i<j} m(n/q_i q_j) + ...),
/// which forces m(1) = 1/2 internally; evaluated in exact rationals.
/// The final value must be integral; anything else is a bug.
pub fn m_moebius(n: u64, sieve: &PrimeSieve) -> Result<BigCount> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "the Möbius recurrence needs n >= 2, got {n}"
        )));
    }
    let mut memo: HashMap<u64, BigRational> = HashMap::new();
    fn rec(
        x: u64,
        sieve: &PrimeSieve,
        memo: &mut HashMap<u64, BigRational>,
    ) -> Result<BigRational> {
        if x == 1 {
            return Ok(BigRational::new(BigInt::one(), BigInt::from(2)));
        }
        if let Some(v) = memo.get(&x) {
            return Ok(v.clone());
        }
        let primes: Vec<u64> = factorize(x, sieve)?
            .parts()
            .iter()
            .map(|&(p, _)| p)
            .collect();
        let r = primes.len();
        let mut alternating = BigRational::zero();
        // nonempty subsets of the distinct primes, sign (-1)^{|S|+1}
        for mask in 1u32..(1 << r) {
            let mut prod = 1u64;
            for (i, &p) in primes.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    prod *= p;
                }
            }
            let sub = rec(x / prod, sieve, memo)?;
            if mask.count_ones() % 2 == 1 {
                alternating += sub;
            } else {
                alternating -= sub;
            }
        }
        let value = alternating * BigRational::from(BigInt::from(2));
        memo.insert(x, value.clone());
        Ok(value)
    }
    let value = rec(n, sieve, &mut memo)?;
    rational_to_count(&value, "Möbius recurrence")
}

fn rational_to_count(value: &BigRational, what: &str) -> Result<BigCount> {
    if !value.is_integer() || value.is_negative() {
        return Err(Error::InternalConsistency(format!(
            "{what} produced non-integral or negative value {value}"
        )));
    }
    Ok(value.to_integer().to_biguint().expect("checked sign"))
}

/// m(lambda): the memoized signature DP. Counts compositions of the exponent
/// vector into nonzero nonnegative vectors; every intermediate vector is
/// canonicalized by sorting, so the state space is partitions of Omega.
pub fn m_signature(sig: &ExponentSignature, cache: &MemoCache) -> BigCount {
    if sig.is_empty() {
        return BigCount::one();
    }
    if let Some(v) = cache.get(sig) {
        return v;
    }
    let exps = sig.exponents();
    let mut total = BigCount::zero();
    // iterate over all vectors 0 <= v <= exps except v = 0, mixed-radix style
    let mut v = vec![0u32; exps.len()];
    'outer: loop {
        // advance v by one
        let mut i = 0;
        loop {
            if i == v.len() {
                break 'outer;
            }
            if v[i] < exps[i] {
                v[i] += 1;
                break;
            }
            v[i] = 0;
            i += 1;
        }
        let rest = ExponentSignature::from_unsorted(
            exps.iter().zip(&v).map(|(&a, &x)| a - x).collect(),
        );
        total += m_signature(&rest, cache);
    }
    cache.insert(sig.clone(), total.clone());
    total
}

/// MacMahon's alternating double sum over products of binomials.
pub fn m_macmahon(sig: &ExponentSignature) -> Result<BigCount> {
    if sig.is_empty() {
        return Err(Error::InvalidArgument(
            "MacMahon's formula needs a nonempty signature".into(),
        ));
    }
    let a: u64 = sig.big_omega() as u64;
    let mut total = BigInt::zero();
    for j in 1..=a {
        for i in 0..j {
            let mut term = BigInt::from(binomial(j, i));
            for &ak in sig.exponents() {
                let ak = ak as u64;
                term *= BigInt::from(binomial(ak + j - i - 1, ak));
            }
            if i % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    if total.is_negative() {
        return Err(Error::InternalConsistency(format!(
            "MacMahon sum came out negative for {sig}"
        )));
    }
    Ok(total.to_biguint().expect("checked sign"))
}

/// Sklar's series m(n) = sum_{k>=1} d_k(n)/2^{k+1}, where d_k(n) is the
/// number of ordered k-factor decompositions allowing 1s.
///
/// d_k(n) = prod_i C(a_i + k - 1, a_i) is a polynomial in k of degree Omega,
/// so the series collapses exactly: expanding d in the binomial basis
/// d(k) = sum_j D_j C(k, j) with forward differences D_j at 0 gives
/// sum_{k>=0} d(k) 2^{-k} = 2 sum_j D_j, hence
/// m(n) = (2 sum_j D_j - d(0)) / 2. Evaluated in exact rationals; the result
/// must be integral (d(0) = 0 for nonempty signatures).
pub fn m_sklar(sig: &ExponentSignature) -> Result<BigCount> {
    if sig.is_empty() {
        return Err(Error::InvalidArgument(
            "Sklar's series needs a nonempty signature".into(),
        ));
    }
    let degree = sig.big_omega() as u64;
    // d(k) for k = 0..=degree
    let d: Vec<BigInt> = (0..=degree)
        .map(|k| {
            let mut prod = BigInt::one();
            for &ai in sig.exponents() {
                let ai = ai as u64;
                prod *= BigInt::from(binomial(ai + k - 1, ai));
            }
            prod
        })
        .collect();
    // forward differences at 0: after step j, diff[i] = Delta^j d(i)
    let mut diff = d.clone();
    let mut diff_sum = BigRational::from(diff[0].clone());
    for j in 1..=degree as usize {
        for i in 0..=(degree as usize - j) {
            diff[i] = &diff[i + 1] - &diff[i];
        }
        diff_sum += BigRational::from(diff[0].clone());
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let value = (diff_sum * BigRational::from(BigInt::from(2))
        - BigRational::from(d[0].clone()))
        * half;
    rational_to_count(&value, "Sklar series")
}

/// Closed form for two-prime inputs:
/// m(p^a q^b) = 2^{a+b-1} sum_{k=0}^{b} C(a,k) C(b,k) 2^{-k}, a >= b >= 0,
/// a >= 1. Evaluated in exact rationals with an integrality check.
pub fn m_two_prime(a: u32, b: u32) -> Result<BigCount> {
    if a == 0 || b > a {
        return Err(Error::InvalidArgument(format!(
            "m_two_prime needs a >= b >= 0 and a >= 1, got a={a}, b={b}"
        )));
    }
    let (a, b) = (a as u64, b as u64);
    let mut sum = BigRational::zero();
    for k in 0..=b {
        let num = BigInt::from(binomial(a, k) * binomial(b, k));
        sum += BigRational::new(num, BigInt::from(2).pow(k as u32));
    }
    let lead = BigRational::from(BigInt::from(2).pow((a + b - 1) as u32));
    rational_to_count(&(lead * sum), "two-prime closed form")
}

/// m_k(n): the count restricted to p_k-smooth integers. Zero when the largest
/// prime factor of n exceeds p_k, otherwise m(n); m_k(1) per convention.
pub fn m_k(
    n: u64,
    k: usize,
    sieve: &PrimeSieve,
    cache: &MemoCache,
    convention: Convention,
) -> Result<BigCount> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "m_k needs n >= 1 and k >= 1, got n={n}, k={k}"
        )));
    }
    if n == 1 {
        return Ok(convention.at_one());
    }
    let f = factorize(n, sieve)?;
    let p_n = f.largest_prime().expect("n >= 2 has a prime factor");
    let pk = sieve.nth_prime(k)?;
    if p_n > pk {
        return Ok(BigCount::zero());
    }
    Ok(m_signature(&signature_of(&f), cache))
}

/// Counts the perfect partitions of n-1, which equal m(n).
///
/// A partition (1^{b_1}, 2^{b_2}, ...) of N is perfect when every
/// 0 < m <= N has exactly one sub-multiset summing to m. The search walks
/// distinct part values in increasing order, carrying the subset-sum
/// representation counts; once all parts below v are placed, the counts
/// under v are frozen, so prefixes violating uniqueness prune immediately.
/// The pruning only skips partitions whose representation counts already
/// disagree with the all-ones target, so the count equals the full
/// enumeration's.
pub fn perfect_partition_count(n: u64, budget: u64) -> Result<BigCount> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "perfect partitions are counted for n >= 2, got {n}"
        )));
    }
    let target = (n - 1) as usize;
    let mut budget = Budget::new(budget, "perfect_partition_count");
    let mut coeffs = vec![0u64; target + 1];
    coeffs[0] = 1;
    let mut found = BigCount::zero();

    fn search(
        min_part: usize,
        remaining: usize,
        coeffs: &[u64],
        target: usize,
        found: &mut BigCount,
        budget: &mut Budget,
    ) -> Result<()> {
        budget.spend()?;
        if remaining == 0 {
            if coeffs.iter().all(|&c| c == 1) {
                *found += BigCount::one();
            }
            return Ok(());
        }
        for v in min_part..=remaining {
            for b in 1..=(remaining / v) {
                // multiply by (1 + q^v + ... + q^{b v})
                let mut next = vec![0u64; target + 1];
                let mut ok = true;
                for (i, &c) in coeffs.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for j in 0..=b {
                        let idx = i + j * v;
                        if idx > target {
                            break;
                        }
                        next[idx] += c;
                        if next[idx] > 1 {
                            ok = false;
                            break;
                        }
                    }
                    if !ok {
                        break;
                    }
                }
                // parts beyond this branch are all > v, so entries <= v are final
                if ok {
                    for m in 1..=v.min(target) {
                        if m <= remaining - v * b + v && next[m] != 1 {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    search(v + 1, remaining - v * b, &next, target, found, budget)?;
                }
            }
        }
        Ok(())
    }

    search(1, target, &coeffs, target, &mut found, &mut budget)?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_sieve;

    fn big(x: u64) -> BigCount {
        BigCount::from(x)
    }

    fn sig(exps: &[u32]) -> ExponentSignature {
        ExponentSignature::new(exps.to_vec()).unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(m_oracle(12, Convention::OneAtOne, 1 << 20).unwrap(), big(8));
        assert_eq!(m_oracle(7, Convention::OneAtOne, 1 << 20).unwrap(), big(1));
        assert_eq!(m_oracle(24, Convention::OneAtOne, 1 << 20).unwrap(), big(20));
        assert_eq!(m_oracle(1, Convention::OneAtOne, 1).unwrap(), big(1));
        assert_eq!(m_oracle(1, Convention::ZeroAtOne, 1).unwrap(), big(0));
        assert_eq!(m_oracle(30, Convention::OneAtOne, 1 << 20).unwrap(), big(13));
    }

    #[test]
    fn oracle_budget_error() {
        let err = m_oracle(5040, Convention::OneAtOne, 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 10, .. }));
    }

    #[test]
    fn divrec_examples() {
        let s = build_sieve(100).unwrap();
        assert_eq!(m_divrec(6, &s).unwrap(), big(3));
        assert_eq!(m_divrec(49, &s).unwrap(), big(2));
        assert_eq!(m_divrec(36, &s).unwrap(), big(26));
        assert_eq!(m_divrec(1, &s).unwrap(), big(1));
    }

    #[test]
    fn moebius_examples() {
        let s = build_sieve(100).unwrap();
        assert_eq!(m_moebius(6, &s).unwrap(), big(3));
        assert_eq!(m_moebius(12, &s).unwrap(), big(8));
        assert_eq!(m_moebius(13, &s).unwrap(), big(1));
        assert!(m_moebius(1, &s).is_err());
    }

    #[test]
    fn signature_dp_examples() {
        let cache = MemoCache::new();
        assert_eq!(m_signature(&ExponentSignature::empty(), &cache), big(1));
        assert_eq!(m_signature(&sig(&[2, 1]), &cache), big(8));
        for a in 1..=12u32 {
            assert_eq!(m_signature(&sig(&[a]), &cache), big(1 << (a - 1)));
        }
        assert_eq!(m_signature(&sig(&[3, 2, 1]), &cache), big(604));
    }

    #[test]
    fn signature_dp_ordered_bell() {
        // squarefree with omega = 15 distinct primes: ordered set partitions
        let cache = MemoCache::new();
        let ones = sig(&[1; 15]);
        assert_eq!(
            m_signature(&ones, &cache).to_string(),
            "230283190977853"
        );
    }

    #[test]
    fn cache_counts_and_snapshot_order() {
        let cache = MemoCache::new();
        m_signature(&sig(&[2, 1]), &cache);
        assert!(cache.misses() > 0);
        m_signature(&sig(&[2, 1]), &cache);
        assert!(cache.hits() > 0);
        let snap = cache.snapshot();
        assert!(snap.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn cache_shared_across_threads() {
        let cache = MemoCache::new();
        std::thread::scope(|scope| {
            for _ in 0..4 {
                scope.spawn(|| {
                    assert_eq!(m_signature(&sig(&[4, 3, 2]), &cache), m_macmahon(&sig(&[4, 3, 2])).unwrap());
                });
            }
        });
    }

    #[test]
    fn macmahon_examples() {
        assert_eq!(m_macmahon(&sig(&[1])).unwrap(), big(1));
        assert_eq!(m_macmahon(&sig(&[2, 1])).unwrap(), big(8));
        let cache = MemoCache::new();
        assert_eq!(
            m_macmahon(&sig(&[3, 2, 1])).unwrap(),
            m_signature(&sig(&[3, 2, 1]), &cache)
        );
        assert_eq!(
            m_macmahon(&sig(&[3, 2, 1])).unwrap(),
            m_oracle(360, Convention::OneAtOne, 1 << 22).unwrap()
        );
        assert!(m_macmahon(&ExponentSignature::empty()).is_err());
    }

    #[test]
    fn sklar_examples() {
        assert_eq!(m_sklar(&sig(&[1])).unwrap(), big(1));
        assert_eq!(m_sklar(&sig(&[2])).unwrap(), big(2));
        assert_eq!(m_sklar(&sig(&[2, 1])).unwrap(), big(8));
        assert!(m_sklar(&ExponentSignature::empty()).is_err());
    }

    #[test]
    fn two_prime_examples() {
        for a in 1..=12u32 {
            assert_eq!(m_two_prime(a, 0).unwrap(), big(1u64 << (a - 1)));
        }
        assert_eq!(m_two_prime(4, 1).unwrap(), big(48));
        assert_eq!(m_two_prime(2, 2).unwrap(), big(26));
        assert!(m_two_prime(0, 0).is_err());
        assert!(m_two_prime(2, 3).is_err());
    }

    #[test]
    fn two_prime_specializations_agree() {
        // m(p^a q) = (a+2) 2^{a-1} and m(p^a q^2) = (a^2+7a+8) 2^{a-2}
        for a in 1..=20u64 {
            assert_eq!(
                m_two_prime(a as u32, 1).unwrap(),
                big((a + 2) * (1 << (a - 1)))
            );
        }
        for a in 2..=20u64 {
            assert_eq!(
                m_two_prime(a as u32, 2).unwrap(),
                big((a * a + 7 * a + 8) * (1 << (a - 2)))
            );
        }
    }

    #[test]
    fn m_k_examples() {
        let s = build_sieve(100).unwrap();
        let cache = MemoCache::new();
        assert_eq!(m_k(8, 1, &s, &cache, Convention::OneAtOne).unwrap(), big(4));
        assert_eq!(m_k(6, 1, &s, &cache, Convention::OneAtOne).unwrap(), big(0));
        assert_eq!(m_k(12, 2, &s, &cache, Convention::OneAtOne).unwrap(), big(8));
        assert_eq!(m_k(1, 3, &s, &cache, Convention::ZeroAtOne).unwrap(), big(0));
        assert_eq!(m_k(1, 3, &s, &cache, Convention::OneAtOne).unwrap(), big(1));
    }

    #[test]
    fn perfect_partition_examples() {
        assert_eq!(perfect_partition_count(12, 1 << 22).unwrap(), big(8));
        assert_eq!(perfect_partition_count(4, 1 << 22).unwrap(), big(2));
        for p in [2u64, 3, 5, 7, 11, 13] {
            assert_eq!(perfect_partition_count(p, 1 << 22).unwrap(), big(1));
        }
        assert_eq!(perfect_partition_count(60, 1 << 26).unwrap(), big(44));
    }

    #[test]
    fn perfect_partition_budget() {
        let err = perfect_partition_count(48, 3).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn all_routes_agree_small() {
        let s = build_sieve(600).unwrap();
        let cache = MemoCache::new();
        for n in 2..=600u64 {
            let f = factorize(n, &s).unwrap();
            let reference = m_signature(&signature_of(&f), &cache);
            assert_eq!(m_divrec(n, &s).unwrap(), reference, "divrec at {n}");
            assert_eq!(m_moebius(n, &s).unwrap(), reference, "moebius at {n}");
            assert_eq!(
                m_macmahon(&signature_of(&f)).unwrap(),
                reference,
                "macmahon at {n}"
            );
            assert_eq!(m_sklar(&signature_of(&f)).unwrap(), reference, "sklar at {n}");
        }
    }

    #[test]
    fn parity_iff_squarefree_small() {
        let s = build_sieve(500).unwrap();
        let cache = MemoCache::new();
        for n in 2..=500u64 {
            let f = factorize(n, &s).unwrap();
            let m = m_signature(&signature_of(&f), &cache);
            let odd = m % 2u32 == BigCount::one();
            assert_eq!(odd, f.is_squarefree(), "parity law at {n}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn oracle_matches_signature_dp(n in 2u64..2000) {
                let s = build_sieve(2048).unwrap();
                let cache = MemoCache::new();
                let f = factorize(n, &s).unwrap();
                prop_assert_eq!(
                    m_oracle(n, Convention::OneAtOne, 1 << 24).unwrap(),
                    m_signature(&signature_of(&f), &cache)
                );
            }

            #[test]
            fn supermultiplicative(r in 2u64..240, s_in in 2u64..240) {
                let s = build_sieve(60000).unwrap();
                let cache = MemoCache::new();
                let m = |x: u64| m_signature(&signature_of(&factorize(x, &s).unwrap()), &cache);
                let lhs = m(r * s_in);
                let rhs = BigCount::from(2u32) * m(r) * m(s_in);
                prop_assert!(lhs >= rhs);
            }

            #[test]
            fn prime_relabeling_invariance(n in 2u64..5000) {
                // replace the primes of n by the smallest primes: m unchanged
                let s = build_sieve(5000).unwrap();
                let cache = MemoCache::new();
                let f = factorize(n, &s).unwrap();
                let mut exps: Vec<u32> = f.parts().iter().map(|&(_, e)| e).collect();
                exps.sort_unstable_by(|a, b| b.cmp(a));
                let mut nbar = 1u64;
                for (i, &e) in exps.iter().enumerate() {
                    nbar = nbar.saturating_mul(s.nth_prime(i + 1).unwrap().pow(e));
                }
                if nbar <= 5000 {
                    let fbar = factorize(nbar, &s).unwrap();
                    prop_assert_eq!(
                        m_signature(&signature_of(&f), &cache),
                        m_signature(&signature_of(&fbar), &cache)
                    );
                }
            }

            #[test]
            fn drop_a_prime_bound(n in 2u64..3000) {
                let s = build_sieve(3000).unwrap();
                let cache = MemoCache::new();
                let f = factorize(n, &s).unwrap();
                let m_n = m_signature(&signature_of(&f), &cache);
                let omega_cap = BigCount::from(2 * f.big_omega());
                for &(p, _) in f.parts() {
                    let m_np = m_signature(&signature_of(&factorize(n / p, &s).unwrap()), &cache);
                    prop_assert!(m_n < &omega_cap * &m_np);
                }
            }
        }
    }
}
