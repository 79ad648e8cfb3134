//! Prime generation: a simple sieve for base primes and a segmented
//! enumerator used by the census and the Euler-product constants.

/// Integer square root, exact for all `u64`.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    // f64 has 53 mantissa bits; correct the estimate in both directions.
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// All primes `<= limit` by a straightforward sieve of Eratosthenes.
///
/// Intended for base primes (`limit` around `sqrt(x)`, a few hundred
/// thousand at most); the segmented path below handles large ranges.
pub fn base_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// Calls `f(p)` for every prime `p` in `[lo, hi)`, in increasing order.
///
/// `base` must contain every prime `<= sqrt(hi - 1)`.
pub fn primes_in_segment(lo: u64, hi: u64, base: &[u64], mut f: impl FnMut(u64)) {
    debug_assert!(lo <= hi);
    let lo = lo.max(2);
    if lo >= hi {
        return;
    }
    let len = (hi - lo) as usize;
    let mut composite = vec![false; len];
    for &p in base {
        if p * p >= hi {
            break;
        }
        let mut m = lo.div_ceil(p) * p;
        if m < p * p {
            m = p * p;
        }
        while m < hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
    }
    for (i, &c) in composite.iter().enumerate() {
        if !c {
            f(lo + i as u64);
        }
    }
}

/// Splits `[1, limit]` into `[lo, hi)` windows of at most `segment` integers.
pub fn segment_ranges(limit: u64, segment: u64) -> Vec<(u64, u64)> {
    let segment = segment.max(2);
    let mut ranges = Vec::new();
    let mut lo = 1u64;
    while lo <= limit {
        let hi = lo.saturating_add(segment).min(limit + 1);
        ranges.push((lo, hi));
        lo = hi;
    }
    ranges
}

/// Deterministic primality by trial division; fine for the word-sized
/// arguments this crate needs (q validation, factorization of p-1).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = 7u64;
    // 2/3/5 wheel offsets.
    let wheel = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut w = 0;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += wheel[w];
        w = (w + 1) % wheel.len();
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n != 2 && is_prime(n)
}
