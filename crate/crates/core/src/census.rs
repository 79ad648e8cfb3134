//! Segmented sieve over `n <= x` producing exact Sylow-signature histograms
//! `D(H, x)` and `D_k(H, x)`, the maximally-non-cyclic count, squarefree
//! tables, and auxiliary prime sums.
//!
//! The census keys every signature simultaneously: one sieve pass yields the
//! full histogram, and `D(H, x)` is an accessor. Per segment the sieve keeps
//! two words per integer: the product of its prime-power factors below
//! `sqrt(x)` (so the one possible large prime cofactor falls out by a single
//! division) and a packed signature key. Segments are independent work units
//! merged by pointwise addition, so results do not depend on scheduling.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::multgroup::Factorization;
use crate::partitions::Partition;
use crate::primes::{base_primes, is_odd_prime, isqrt, primes_in_segment, segment_ranges};

/// Largest supported census limit. Keeps cofactors inside `u32`, part values
/// inside the packed key, and per-value part counts below 8 (at most six
/// distinct primes `p = 1 mod q` can divide an `n <= 10^9`, plus one part
/// from the power of q itself).
pub const MAX_CENSUS_X: u64 = 1_000_000_000;

/// Default segment: 2^22 integers per window.
pub const DEFAULT_SEGMENT: u64 = 1 << 22;

/// Default cap for the element-order oracle.
pub const DEFAULT_ORACLE_CAP: u64 = 1_000_000;

/// Configuration for a census run.
#[derive(Debug, Clone, Serialize)]
pub struct CensusConfig {
    /// Count integers `n <= x`.
    pub x: u64,
    /// The odd prime whose Sylow subgroup is classified.
    pub q: u64,
    /// Window size of the segmented sieve, in integers.
    pub segment_size: u64,
    /// Largest `n` the element-order oracle will accept.
    pub oracle_cap: u64,
}

impl CensusConfig {
    pub fn new(x: u64, q: u64) -> Self {
        Self {
            x,
            q,
            segment_size: DEFAULT_SEGMENT,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !is_odd_prime(self.q) {
            return Err(Error::NotOddPrime(self.q));
        }
        if self.x < 1 {
            return Err(Error::Config("x must be >= 1".into()));
        }
        if self.x > MAX_CENSUS_X {
            return Err(Error::Config(format!(
                "x = {} exceeds the supported maximum {MAX_CENSUS_X}",
                self.x
            )));
        }
        if self.segment_size < 2 {
            return Err(Error::Config("segment_size must be >= 2".into()));
        }
        Ok(())
    }
}

// Packed per-n signature state: bits 3(v-1)..3v hold the number of parts
// equal to v (v = 1..=18), bits 56.. hold k = nu_q(n). For x <= 10^9 both
// the part values and the per-value counts fit; see MAX_CENSUS_X.
const MAX_PART_VALUE: u32 = 18;
const K_SHIFT: u32 = 56;

#[inline]
fn part_increment(v: u32) -> u64 {
    debug_assert!((1..=MAX_PART_VALUE).contains(&v));
    1u64 << (3 * (v - 1))
}

fn decode_key(key: u64) -> (u32, Partition) {
    let k = (key >> K_SHIFT) as u32;
    let mut parts = Vec::new();
    for v in (1..=MAX_PART_VALUE).rev() {
        let c = (key >> (3 * (v - 1))) & 7;
        for _ in 0..c {
            parts.push(v);
        }
    }
    (k, Partition::from_sorted_desc(parts))
}

/// Exact histogram of `(k, signature)` pairs for `n <= x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    pub x: u64,
    pub q: u64,
    counts: BTreeMap<(u32, Partition), u64>,
}

#[derive(Serialize)]
struct CensusRowJson {
    k: u32,
    signature: String,
    count: u64,
}

#[derive(Serialize)]
struct CensusJson {
    x: u64,
    q: u64,
    rows: Vec<CensusRowJson>,
}

impl CensusTable {
    pub fn from_rows(x: u64, q: u64, rows: Vec<(u32, Partition, u64)>) -> Self {
        let mut counts = BTreeMap::new();
        for (k, sig, c) in rows {
            *counts.entry((k, sig)).or_insert(0) += c;
        }
        Self { x, q, counts }
    }

    /// `D(H, x) = sum_k D_k(H, x)`.
    pub fn count_d(&self, sig: &Partition) -> u64 {
        self.counts
            .iter()
            .filter(|((_, s), _)| s == sig)
            .map(|(_, &c)| c)
            .sum()
    }

    /// `D_k(H, x)`, the count within the stratum `nu_q(n) = k`.
    pub fn count_dk(&self, k: u32, sig: &Partition) -> u64 {
        self.counts.get(&(k, sig.clone())).copied().unwrap_or(0)
    }

    /// Total over all cells; equals `x` for a full census.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn rows(&self) -> impl Iterator<Item = (u32, &Partition, u64)> {
        self.counts.iter().map(|((k, s), &c)| (*k, s, c))
    }

    /// Distinct signatures present, in canonical order.
    pub fn signatures(&self) -> Vec<Partition> {
        let mut sigs: Vec<Partition> = self.counts.keys().map(|(_, s)| s.clone()).collect();
        sigs.sort();
        sigs.dedup();
        sigs
    }

    /// Strata `k` present for a given signature.
    pub fn strata(&self, sig: &Partition) -> Vec<u32> {
        self.counts
            .keys()
            .filter(|(_, s)| s == sig)
            .map(|(k, _)| *k)
            .collect()
    }

    /// CSV export: header `x,q,k,signature,count`, rows sorted by
    /// `(k, signature)`, signature always quoted. Byte-stable across runs.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,q,k,signature,count\n");
        for ((k, sig), c) in &self.counts {
            s.push_str(&format!("{},{},{},\"{}\",{}\n", self.x, self.q, k, sig, c));
        }
        s
    }

    /// JSON mirror of the CSV with the same fields and ordering.
    pub fn to_json_string(&self) -> String {
        let doc = CensusJson {
            x: self.x,
            q: self.q,
            rows: self
                .counts
                .iter()
                .map(|((k, sig), &c)| CensusRowJson {
                    k: *k,
                    signature: sig.to_string(),
                    count: c,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("census serialization cannot fail")
    }
}

struct SieveContext {
    limit: u64,
    q: u64,
    /// All primes <= sqrt(limit).
    base: Vec<u64>,
    /// Base primes `p = 1 mod q` with their valuation `nu_q(p - 1)`.
    sig_primes: Vec<(u64, u32)>,
    /// Whether q itself is among the base primes.
    q_in_base: bool,
}

impl SieveContext {
    fn new(limit: u64, q: u64) -> Self {
        let sqrt = isqrt(limit);
        let base = base_primes(sqrt);
        let sig_primes = base
            .iter()
            .filter(|&&p| p % q == 1)
            .map(|&p| {
                let mut m = (p - 1) / q;
                let mut v = 1u32;
                while m.is_multiple_of(q) {
                    m /= q;
                    v += 1;
                }
                (p, v)
            })
            .collect();
        Self {
            limit,
            q,
            base,
            sig_primes,
            q_in_base: q <= sqrt,
        }
    }
}

/// Multiplies `prod[m - lo]` by `p` for every prime power `p^e <= limit`
/// dividing `m`, leaving `prod[i] = ` the full contribution of primes
/// `<= sqrt(limit)` to `lo + i`.
fn fill_factored_part(lo: u64, hi: u64, limit: u64, base: &[u64], prod: &mut [u32]) {
    for &p in base {
        let mut pe = p;
        loop {
            let mut m = lo.div_ceil(pe) * pe;
            while m < hi {
                prod[(m - lo) as usize] *= p as u32;
                m += pe;
            }
            if pe > limit / p {
                break;
            }
            pe *= p;
        }
    }
}

fn census_segment(lo: u64, hi: u64, ctx: &SieveContext) -> HashMap<u64, u64> {
    let len = (hi - lo) as usize;
    let mut prod = vec![1u32; len];
    let mut key = vec![0u64; len];

    fill_factored_part(lo, hi, ctx.limit, &ctx.base, &mut prod);

    // One part per distinct prime p = 1 mod q dividing n.
    for &(p, v) in &ctx.sig_primes {
        let inc = part_increment(v);
        let mut m = lo.div_ceil(p) * p;
        while m < hi {
            key[(m - lo) as usize] += inc;
            m += p;
        }
    }

    // k = nu_q(n), accumulated one level per power of q.
    if ctx.q_in_base {
        let mut qe = ctx.q;
        loop {
            let mut m = lo.div_ceil(qe) * qe;
            while m < hi {
                key[(m - lo) as usize] += 1 << K_SHIFT;
                m += qe;
            }
            if qe > ctx.limit / ctx.q {
                break;
            }
            qe *= ctx.q;
        }
    }

    let mut hist: HashMap<u64, u64> = HashMap::new();
    for i in 0..len {
        let n = lo + i as u64;
        let mut kk = key[i];
        let cof = n / prod[i] as u64;
        if cof > 1 {
            // cof is prime: all its prime factors exceed sqrt(limit).
            if cof == ctx.q {
                kk += 1 << K_SHIFT;
            } else if cof % ctx.q == 1 {
                let mut m = (cof - 1) / ctx.q;
                let mut v = 1u32;
                while m.is_multiple_of(ctx.q) {
                    m /= ctx.q;
                    v += 1;
                }
                kk += part_increment(v);
            }
        }
        // q^k || n with k >= 2 contributes the part k - 1.
        let k = (kk >> K_SHIFT) as u32;
        if k >= 2 {
            kk += part_increment(k - 1);
        }
        *hist.entry(kk).or_insert(0) += 1;
    }
    hist
}

/// Runs the full census: `counts[(k, alpha)] = #{n <= x : nu_q(n) = k,
/// G_q(n) = Z_{q^alpha}}`, exactly.
pub fn census_sylow(cfg: &CensusConfig) -> Result<CensusTable> {
    cfg.validate()?;
    let ctx = SieveContext::new(cfg.x, cfg.q);
    let ranges = segment_ranges(cfg.x, cfg.segment_size);
    let partials: Vec<HashMap<u64, u64>> = ranges
        .par_iter()
        .map(|&(lo, hi)| census_segment(lo, hi, &ctx))
        .collect();

    let mut merged: HashMap<u64, u64> = HashMap::new();
    for part in partials {
        for (key, c) in part {
            *merged.entry(key).or_insert(0) += c;
        }
    }
    let mut counts = BTreeMap::new();
    for (key, c) in merged {
        let (k, sig) = decode_key(key);
        // Strata k >= first_part + 2 cannot occur; the key construction
        // inserts the part k - 1 whenever k >= 2.
        assert!(
            k < sig.first() + 2,
            "impossible stratum k={k} for signature {sig}"
        );
        *counts.entry((k, sig)).or_insert(0) += c;
    }
    Ok(CensusTable {
        x: cfg.x,
        q: cfg.q,
        counts,
    })
}

/// Bitmap of squarefree integers in `1..=limit`.
#[derive(Debug, Clone)]
pub struct SquarefreeTable {
    limit: u64,
    bits: Vec<u64>,
}

impl SquarefreeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Whether `m` is squarefree; `m` must lie in `1..=limit`.
    #[inline]
    pub fn is_squarefree(&self, m: u64) -> bool {
        assert!(1 <= m && m <= self.limit, "m={m} outside table");
        self.bits[(m >> 6) as usize] & (1 << (m & 63)) != 0
    }
}

/// Sieves squarefreeness up to `limit` by clearing multiples of p^2.
pub fn squarefree_sieve(limit: u64) -> SquarefreeTable {
    let words = (limit as usize >> 6) + 1;
    let mut bits = vec![!0u64; words];
    for p in base_primes(isqrt(limit)) {
        let p2 = p * p;
        let mut m = p2;
        while m <= limit {
            bits[(m >> 6) as usize] &= !(1 << (m & 63));
            m += p2;
        }
    }
    SquarefreeTable { limit, bits }
}

fn mnc_segment(lo: u64, hi: u64, limit: u64, base: &[u64], sqfree: &SquarefreeTable) -> u64 {
    let len = (hi - lo) as usize;
    let mut prod = vec![1u32; len];
    let mut bad = vec![false; len];

    fill_factored_part(lo, hi, limit, base, &mut prod);

    for &p in base {
        if !sqfree.is_squarefree(p - 1) {
            let mut m = lo.div_ceil(p) * p;
            while m < hi {
                bad[(m - lo) as usize] = true;
                m += p;
            }
        } else {
            // Exponent condition: 2^4 (for p = 2) or p^3 (odd p) kills n.
            let cube = if p == 2 { 16 } else { p * p * p };
            if cube <= limit {
                let mut m = lo.div_ceil(cube) * cube;
                while m < hi {
                    bad[(m - lo) as usize] = true;
                    m += cube;
                }
            }
        }
    }

    let mut good = 0u64;
    for i in 0..len {
        if bad[i] {
            continue;
        }
        let n = lo + i as u64;
        let cof = n / prod[i] as u64;
        if cof > 1 && !sqfree.is_squarefree(cof - 1) {
            continue;
        }
        good += 1;
    }
    good
}

/// Counts `n <= x` whose multiplicative group is maximally non-cyclic, using
/// a caller-provided squarefree table covering `1..=x` (for the `p - 1`
/// tests) to allow reuse across limits.
pub fn census_mnc_with(x: u64, segment_size: u64, sqfree: &SquarefreeTable) -> Result<u64> {
    if !(1..=MAX_CENSUS_X).contains(&x) {
        return Err(Error::Config(format!("x = {x} out of range")));
    }
    if sqfree.limit() < x.max(2) - 1 {
        return Err(Error::Config(format!(
            "squarefree table covers only 1..={}, need 1..={}",
            sqfree.limit(),
            x - 1
        )));
    }
    let base = base_primes(isqrt(x));
    let total: u64 = segment_ranges(x, segment_size)
        .par_iter()
        .map(|&(lo, hi)| mnc_segment(lo, hi, x, &base, sqfree))
        .sum();
    Ok(total)
}

/// Counts `n <= x` with `(Z/nZ)^x` maximally non-cyclic.
pub fn census_mnc(x: u64) -> Result<u64> {
    let sqfree = squarefree_sieve(x.max(2));
    census_mnc_with(x, DEFAULT_SEGMENT, &sqfree)
}

/// Exact `(#{p <= x : p - 1 squarefree}, pi(x))`.
pub fn prime_pminus1_squarefree_count(x: u64) -> Result<(u64, u64)> {
    if x < 2 {
        return Err(Error::Config("x must be >= 2".into()));
    }
    let sqfree = squarefree_sieve(x);
    let base = base_primes(isqrt(x));
    let partials: Vec<(u64, u64)> = segment_ranges(x, DEFAULT_SEGMENT)
        .par_iter()
        .map(|&(lo, hi)| {
            let mut good = 0u64;
            let mut total = 0u64;
            primes_in_segment(lo, hi, &base, |p| {
                total += 1;
                if sqfree.is_squarefree(p - 1) {
                    good += 1;
                }
            });
            (good, total)
        })
        .collect();
    let good = partials.iter().map(|&(g, _)| g).sum();
    let total = partials.iter().map(|&(_, t)| t).sum();
    Ok((good, total))
}

/// Compensated partial sum `M(x) = sum 1/p` over primes `p <= x` with
/// `nu_q(p - 1) = alpha`. Deterministic: per-segment partials are reduced in
/// segment order regardless of worker count.
pub fn mertens_sum(q: u64, alpha: u32, x: u64) -> Result<f64> {
    if !is_odd_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    if alpha < 1 {
        return Err(Error::Config("alpha must be >= 1".into()));
    }
    let Some(qa) = q.checked_pow(alpha) else {
        return Ok(0.0);
    };
    if qa > x {
        return Ok(0.0);
    }
    let base = base_primes(isqrt(x));
    let partials: Vec<KahanSum> = segment_ranges(x, DEFAULT_SEGMENT)
        .par_iter()
        .map(|&(lo, hi)| {
            let mut sum = KahanSum::new();
            primes_in_segment(lo, hi, &base, |p| {
                if (p - 1) % qa == 0 && ((p - 1) / qa) % q != 0 {
                    sum.add(1.0 / p as f64);
                }
            });
            sum
        })
        .collect();
    let mut total = KahanSum::new();
    for part in &partials {
        total.merge(part);
    }
    Ok(total.value())
}

/// Streaming factorizations of every `n` in `1..=limit`, in order, with peak
/// memory proportional to one segment plus the base primes.
pub fn sieve_factorizations(limit: u64, segment_size: u64) -> FactorizationStream {
    FactorizationStream {
        limit,
        segment: segment_size.max(2),
        base: base_primes(isqrt(limit)),
        next_lo: 1,
        buffer: Vec::new().into_iter(),
    }
}

pub struct FactorizationStream {
    limit: u64,
    segment: u64,
    base: Vec<u64>,
    next_lo: u64,
    buffer: std::vec::IntoIter<(u64, Factorization)>,
}

impl FactorizationStream {
    fn fill(&mut self) {
        let lo = self.next_lo;
        let hi = lo.saturating_add(self.segment).min(self.limit + 1);
        self.next_lo = hi;
        let len = (hi - lo) as usize;
        let mut pairs: Vec<Vec<(u64, u32)>> = vec![Vec::new(); len];
        let mut prod = vec![1u64; len];
        for &p in &self.base {
            let mut pe = p;
            let mut e = 1u32;
            loop {
                let mut m = lo.div_ceil(pe) * pe;
                while m < hi {
                    let i = (m - lo) as usize;
                    if e == 1 {
                        pairs[i].push((p, 1));
                    } else {
                        pairs[i].last_mut().expect("power implies prime seen").1 = e;
                    }
                    prod[i] *= p;
                    m += pe;
                }
                if pe > self.limit / p {
                    break;
                }
                pe *= p;
                e += 1;
            }
        }
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let n = lo + i as u64;
            let cof = n / prod[i];
            let mut f = std::mem::take(&mut pairs[i]);
            if cof > 1 {
                f.push((cof, 1));
            }
            out.push((n, Factorization::from_sieve(f)));
        }
        self.buffer = out.into_iter();
    }
}

impl Iterator for FactorizationStream {
    type Item = (u64, Factorization);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(item) = self.buffer.next() {
                return Some(item);
            }
            if self.next_lo > self.limit {
                return None;
            }
            self.fill();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multgroup::{sylow_signature, sylow_signature_oracle};

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn key_round_trip() {
        let mut key = 0u64;
        for v in [1u32, 1, 2, 18, 1, 5] {
            key += part_increment(v);
        }
        key += 3 << K_SHIFT;
        let (k, sig) = decode_key(key);
        assert_eq!(k, 3);
        assert_eq!(sig, pt(&[18, 5, 2, 1, 1, 1]));
    }

    #[test]
    fn sieve_factorizations_examples() {
        let got: Vec<(u64, Vec<(u64, u32)>)> = sieve_factorizations(6, 4)
            .map(|(n, f)| (n, f.pairs().to_vec()))
            .collect();
        assert_eq!(
            got,
            vec![
                (1, vec![]),
                (2, vec![(2, 1)]),
                (3, vec![(3, 1)]),
                (4, vec![(2, 2)]),
                (5, vec![(5, 1)]),
                (6, vec![(2, 1), (3, 1)]),
            ]
        );

        let single: Vec<_> = sieve_factorizations(1, 16).collect();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].0, 1);
        assert!(single[0].1.pairs().is_empty());

        let f720 = sieve_factorizations(1000, 128)
            .find(|&(n, _)| n == 720)
            .unwrap()
            .1;
        assert_eq!(f720.pairs(), &[(2, 4), (3, 2), (5, 1)]);
    }

    #[test]
    fn sieve_factorizations_match_trial_division() {
        for (n, f) in sieve_factorizations(5000, 257) {
            assert_eq!(f, Factorization::of(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn census_x10_worked_example() {
        let table = census_sylow(&CensusConfig::new(10, 3)).unwrap();
        let expected = CensusTable::from_rows(
            10,
            3,
            vec![
                (0, pt(&[]), 6),
                (0, pt(&[1]), 1),
                (1, pt(&[]), 2),
                (2, pt(&[1]), 1),
            ],
        );
        assert_eq!(table, expected);
        assert_eq!(table.count_d(&pt(&[])), 8);
        assert_eq!(table.count_d(&pt(&[1])), 2);
        assert_eq!(table.count_dk(0, &pt(&[1])), 1);
        assert_eq!(table.count_dk(2, &pt(&[1])), 1);
        assert_eq!(table.count_dk(1, &pt(&[1])), 0);
        assert_eq!(table.count_dk(0, &pt(&[])), 6);
        assert_eq!(table.count_d(&pt(&[7])), 0);
    }

    #[test]
    fn census_x1_trivial() {
        let table = census_sylow(&CensusConfig::new(1, 3)).unwrap();
        assert_eq!(
            table,
            CensusTable::from_rows(1, 3, vec![(0, Partition::empty(), 1)])
        );
    }

    #[test]
    fn census_rejects_bad_config() {
        assert!(census_sylow(&CensusConfig::new(10, 2)).is_err());
        assert!(census_sylow(&CensusConfig::new(10, 9)).is_err());
        assert!(census_sylow(&CensusConfig::new(0, 3)).is_err());
        assert!(census_sylow(&CensusConfig::new(MAX_CENSUS_X + 1, 3)).is_err());
        let mut cfg = CensusConfig::new(10, 3);
        cfg.segment_size = 1;
        assert!(census_sylow(&cfg).is_err());
    }

    #[test]
    fn census_total_is_x_and_segmenting_irrelevant() {
        for q in [3u64, 5, 7] {
            let reference = census_sylow(&CensusConfig::new(3000, q)).unwrap();
            assert_eq!(reference.total(), 3000);
            for seg in [2u64, 7, 64, 1000, 4096] {
                let mut cfg = CensusConfig::new(3000, q);
                cfg.segment_size = seg;
                assert_eq!(census_sylow(&cfg).unwrap(), reference, "q={q} seg={seg}");
            }
        }
    }

    #[test]
    fn census_matches_oracle_small() {
        for q in [3u64, 5] {
            let x = 2000u64;
            let table = census_sylow(&CensusConfig::new(x, q)).unwrap();
            let mut expected: BTreeMap<(u32, Partition), u64> = BTreeMap::new();
            for (_, f) in sieve_factorizations(x, 512) {
                let k = f.exponent_of(q);
                let sig = sylow_signature(q, &f).unwrap();
                *expected.entry((k, sig.partition)).or_insert(0) += 1;
            }
            let got: BTreeMap<(u32, Partition), u64> = table
                .rows()
                .map(|(k, s, c)| ((k, s.clone()), c))
                .collect();
            assert_eq!(got, expected, "q={q}");

            // And the signatures themselves agree with the element-order oracle.
            for (n, f) in sieve_factorizations(200, 64) {
                assert_eq!(
                    sylow_signature(q, &f).unwrap(),
                    sylow_signature_oracle(q, n, 1000).unwrap(),
                    "q={q} n={n}"
                );
            }
        }
    }

    #[test]
    fn squarefree_examples() {
        let t = squarefree_sieve(100);
        assert!(t.is_squarefree(1));
        assert!(t.is_squarefree(10));
        assert!(t.is_squarefree(30));
        assert!(!t.is_squarefree(4));
        assert!(!t.is_squarefree(12));
        assert!(!t.is_squarefree(49));
        // Against the definition.
        for m in 1..=100u64 {
            let naive = (2..=m).all(|d| d * d > m || m % (d * d) != 0);
            assert_eq!(t.is_squarefree(m), naive, "m={m}");
        }
    }

    #[test]
    fn mnc_examples() {
        assert_eq!(census_mnc(1).unwrap(), 1);
        assert_eq!(census_mnc(10).unwrap(), 8);
        // Excluded below 16: 5, 10, 13, 15, 16 (13 - 1 = 12 is not squarefree).
        assert_eq!(census_mnc(16).unwrap(), 11);
    }

    #[test]
    fn mnc_matches_brute_force() {
        use crate::multgroup::is_maximally_noncyclic;
        let x = 3000u64;
        let sqfree = squarefree_sieve(x);
        let brute = sieve_factorizations(x, 512)
            .filter(|(_, f)| is_maximally_noncyclic(f, |m| sqfree.is_squarefree(m)))
            .count() as u64;
        assert_eq!(census_mnc(x).unwrap(), brute);
        // Segment size does not matter.
        assert_eq!(census_mnc_with(x, 97, &sqfree).unwrap(), brute);
    }

    #[test]
    fn pminus1_squarefree_examples() {
        assert_eq!(prime_pminus1_squarefree_count(2).unwrap(), (1, 1));
        assert_eq!(prime_pminus1_squarefree_count(10).unwrap(), (3, 4));
        let (count, pi) = prime_pminus1_squarefree_count(100).unwrap();
        assert_eq!(pi, 25);
        let sq = squarefree_sieve(100);
        let brute = base_primes(100)
            .iter()
            .filter(|&&p| sq.is_squarefree(p - 1))
            .count() as u64;
        assert_eq!(count, brute);
    }

    #[test]
    fn mertens_examples() {
        assert_eq!(mertens_sum(3, 1, 7).unwrap(), 1.0 / 7.0);
        assert_eq!(mertens_sum(3, 1, 2).unwrap(), 0.0);
        assert_eq!(mertens_sum(3, 2, 19).unwrap(), 1.0 / 19.0);
        assert_eq!(mertens_sum(7, 9, 100).unwrap(), 0.0);
        // Brute force cross-check.
        let q = 3;
        let alpha = 1;
        let x = 5000u64;
        let brute: f64 = base_primes(x)
            .iter()
            .filter(|&&p| crate::multgroup::nu(q, p - 1).unwrap() == alpha)
            .map(|&p| 1.0 / p as f64)
            .sum();
        assert!((mertens_sum(q, alpha, x).unwrap() - brute).abs() < 1e-12);
    }

    #[test]
    fn csv_and_json_shape() {
        let table = census_sylow(&CensusConfig::new(10, 3)).unwrap();
        let csv = table.to_csv();
        assert_eq!(
            csv,
            "x,q,k,signature,count\n\
             10,3,0,\"[]\",6\n\
             10,3,0,\"[1]\",1\n\
             10,3,1,\"[]\",2\n\
             10,3,2,\"[1]\",1\n"
        );
        let json: serde_json::Value = serde_json::from_str(&table.to_json_string()).unwrap();
        assert_eq!(json["x"], 10);
        assert_eq!(json["q"], 3);
        assert_eq!(json["rows"][0]["signature"], "[]");
        assert_eq!(json["rows"][0]["count"], 6);
        assert_eq!(json["rows"].as_array().unwrap().len(), 4);
    }
}
