//! Structure of the multiplicative group `(Z/nZ)^x`: q-adic valuations, the
//! Sylow q-subgroup signature read off a factorization, an independent
//! element-order oracle, invariant factors, and the maximally-non-cyclic
//! predicate.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::primes::{is_odd_prime, is_prime};

/// Canonical factorization of a positive integer: `(prime, exponent)` pairs
/// with strictly increasing primes and all exponents >= 1. The empty
/// factorization is `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn new(pairs: Vec<(u64, u32)>) -> Result<Self> {
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::BadFactorization(format!(
                    "primes not strictly increasing: {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        for &(p, e) in &pairs {
            if e == 0 {
                return Err(Error::BadFactorization(format!("exponent 0 on prime {p}")));
            }
            if !is_prime(p) {
                return Err(Error::BadFactorization(format!("{p} is not prime")));
            }
        }
        Ok(Self { pairs })
    }

    /// Internal constructor for sieve output that is canonical by build.
    pub(crate) fn from_sieve(pairs: Vec<(u64, u32)>) -> Self {
        debug_assert!(Factorization::new(pairs.clone()).is_ok());
        Self { pairs }
    }

    /// Factors `n` by trial division.
    pub fn of(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadFactorization("cannot factor 0".into()));
        }
        let mut pairs = Vec::new();
        let mut m = n;
        let mut push = |p: u64, m: &mut u64| {
            let mut e = 0u32;
            while (*m).is_multiple_of(p) {
                *m /= p;
                e += 1;
            }
            if e > 0 {
                pairs.push((p, e));
            }
        };
        push(2, &mut m);
        push(3, &mut m);
        let mut d = 5u64;
        while d * d <= m {
            push(d, &mut m);
            push(d + 2, &mut m);
            d += 6;
        }
        if m > 1 {
            pairs.push((m, 1));
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    /// Reconstructs `n`.
    pub fn value(&self) -> u64 {
        self.pairs
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product::<u64>()
            .max(1)
    }

    /// Euler's totient of the factored integer.
    pub fn phi(&self) -> u64 {
        self.pairs
            .iter()
            .map(|&(p, e)| p.pow(e - 1) * (p - 1))
            .product::<u64>()
            .max(1)
    }

    /// Exponent of `p` in `n`.
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.pairs
            .iter()
            .find(|&&(q, _)| q == p)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }
}

/// The partition `alpha` with Sylow q-subgroup of `(Z/nZ)^x` isomorphic to
/// `Z_{q^{alpha_1}} x ... x Z_{q^{alpha_j}}`; empty means the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GroupSignature {
    pub partition: Partition,
}

impl GroupSignature {
    pub fn new(partition: Partition) -> Self {
        Self { partition }
    }
}

impl std::fmt::Display for GroupSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.partition.fmt(f)
    }
}

/// q-adic valuation: the largest `k` with `q^k | x`. Rejects `x = 0`.
pub fn nu(q: u64, x: u64) -> Result<u32> {
    if x == 0 {
        return Err(Error::ZeroValuation);
    }
    debug_assert!(q >= 2);
    let mut k = 0;
    let mut m = x;
    while m.is_multiple_of(q) {
        m /= q;
        k += 1;
    }
    Ok(k)
}

/// Sylow q-subgroup signature of `(Z/nZ)^x` from the factorization of `n`.
///
/// By CRT each odd prime `p != q` dividing `n` contributes one cyclic factor
/// `Z_{p-1}` (its `p`-power part has no q-component), hence one part
/// `nu_q(p-1)` when that is positive; `p = 2` contributes parts the same way
/// through `Z_{2^e}^x` whose odd part is trivial; and `q^k || n` with
/// `k >= 2` contributes the part `k - 1` through `Z_{q^{k-1}(q-1)}`.
pub fn sylow_signature(q: u64, f: &Factorization) -> Result<GroupSignature> {
    if !is_odd_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    let mut parts = Vec::new();
    for &(p, e) in f.pairs() {
        if p == q {
            if e >= 2 {
                parts.push(e - 1);
            }
        } else {
            let v = nu(q, p - 1).expect("p - 1 >= 1");
            if v >= 1 {
                parts.push(v);
            }
        }
    }
    Ok(GroupSignature::new(Partition::new(parts)?))
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % modulus as u128) as u64;
        }
        base = ((base as u128 * base as u128) % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Brute-force signature oracle, independent of [`sylow_signature`].
///
/// Counts `N_i = #{x in (Z/nZ)^x : x^{q^i} = 1}`. Since
/// `N_i = q^{a_1 + ... + a_i}` for the conjugate partition `a`, the conjugate
/// parts are recovered from successive quotients; counting stops at the first
/// `i` with `N_{i+1} = N_i`, which must happen because the q-group is finite.
/// Cost is one modular power per residue per level, so `n` is capped.
pub fn sylow_signature_oracle(q: u64, n: u64, cap: u64) -> Result<GroupSignature> {
    if !is_odd_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    if n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    if n == 0 {
        return Err(Error::ZeroValuation);
    }
    // Current q^i-th powers of every unit; start at i = 1.
    let mut powers: Vec<u64> = (1..=n).filter(|&x| gcd(x, n) == 1).collect();
    for y in powers.iter_mut() {
        *y = pow_mod(*y, q, n);
    }
    let one = if n == 1 { 0 } else { 1 };
    let mut counts = Vec::new();
    loop {
        let count = powers.iter().filter(|&&y| y == one).count() as u64;
        if counts.last() == Some(&count) {
            break;
        }
        counts.push(count);
        for y in powers.iter_mut() {
            *y = pow_mod(*y, q, n);
        }
    }
    // counts[i-1] = N_i = q^{a_1 + ... + a_i}; decode the conjugate parts.
    let mut conj = Vec::new();
    let mut prev_log = 0u32;
    for &c in &counts {
        let log = nu(q, c).expect("N_i is positive");
        debug_assert_eq!(q.pow(log), c, "N_i must be a power of q");
        if log == prev_log {
            break;
        }
        conj.push(log - prev_log);
        prev_log = log;
    }
    let conj = Partition::new(conj)?;
    Ok(GroupSignature::new(conj.conjugate()))
}

/// Invariant factor decomposition `d_1 | d_2 | ... | d_l` of the abelian
/// group given by its primary decomposition (a multiset of prime powers).
pub fn invariant_factors(primary: &[u64]) -> Result<Vec<u64>> {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &pp in primary {
        let f = Factorization::of(pp)?;
        if pp < 2 || f.pairs().len() != 1 {
            return Err(Error::NotPrimePower(pp));
        }
        let (p, e) = f.pairs()[0];
        by_prime.entry(p).or_default().push(e);
    }
    let ell = by_prime.values().map(Vec::len).max().unwrap_or(0);
    for exps in by_prime.values_mut() {
        exps.sort_unstable_by(|a, b| b.cmp(a));
    }
    // Slot 0 collects the largest power of every prime, slot 1 the next, ...
    let mut factors = vec![1u64; ell];
    for (p, exps) in &by_prime {
        for (slot, &e) in exps.iter().enumerate() {
            factors[slot] *= p.pow(e);
        }
    }
    factors.reverse();
    Ok(factors)
}

/// Primary decomposition of `(Z/nZ)^x` as a multiset of prime powers, read
/// off the CRT shapes of `Z_{2^r}^x` and `Z_{p^r}^x`.
pub fn unit_group_primary_decomposition(f: &Factorization) -> Vec<u64> {
    let mut primary = Vec::new();
    for &(p, r) in f.pairs() {
        if p == 2 {
            // Z_{2^r}^x: trivial for r <= 1, Z_2 for r = 2,
            // Z_2 x Z_{2^{r-2}} for r >= 3.
            if r == 2 {
                primary.push(2);
            } else if r >= 3 {
                primary.push(2);
                primary.push(1u64 << (r - 2));
            }
        } else {
            // Z_{p^r}^x is cyclic of order p^{r-1}(p-1).
            if r >= 2 {
                primary.push(p.pow(r - 1));
            }
            let pm1 = Factorization::of(p - 1).expect("p - 1 >= 1");
            for &(t, e) in pm1.pairs() {
                primary.push(t.pow(e));
            }
        }
    }
    primary.sort_unstable();
    primary
}

/// Whether `(Z/nZ)^x` is maximally non-cyclic, i.e. every primary factor is
/// `Z_p`: equivalently `2^4` does not divide `n`, `p^3` divides `n` for no
/// odd prime `p`, and `p - 1` is squarefree for every prime `p | n`.
///
/// `sqfree` must answer squarefreeness for every `p - 1` with `p` in `f`.
pub fn is_maximally_noncyclic(f: &Factorization, sqfree: impl Fn(u64) -> bool) -> bool {
    for &(p, e) in f.pairs() {
        if p == 2 {
            if e >= 4 {
                return false;
            }
        } else if e >= 3 {
            return false;
        }
        if p > 2 && !sqfree(p - 1) {
            return false;
        }
    }
    true
}
