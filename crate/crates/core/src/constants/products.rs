//! The Euler-product constants of the counting formulas: B_q, the composite
//! K(Z_{q^alpha}), Artin's constant xi, and the Wirsing-Odoni constant A.
//!
//! All prime products are accumulated in log space with compensated
//! summation. Segments may be sieved in parallel, but partial sums are
//! reduced in segment order, so results are bit-identical for any worker
//! count. Truncation tails are folded into the reported error bound; the
//! one genuinely heuristic tail (for A) is reported as a separate field.

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::census::SquarefreeTable;
use crate::constants::characters::{l_one, DirichletCharacter};
use crate::constants::precision::{ComplexPrecision, PrecisionValue};
use crate::constants::special::{digamma_any, gamma_real};
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::partitions::{c_alpha, e_q_alpha, Partition};
use crate::primes::{base_primes, is_odd_prime, isqrt, primes_in_segment, segment_ranges};

const PRODUCT_SEGMENT: u64 = 1 << 22;
/// Allowance for per-term rounding in the compensated log sums.
const LOG_SUM_ROUNDING: f64 = 1e-14;

fn require_cutoff(cutoff: u64) -> Result<()> {
    if cutoff < 100 {
        return Err(Error::Config(format!(
            "cutoff {cutoff} too small; need >= 100"
        )));
    }
    Ok(())
}

/// Deterministic parallel sum of `term(p)` over primes `p <= limit`.
fn prime_log_sum(limit: u64, term: impl Fn(u64) -> f64 + Sync) -> f64 {
    let base = base_primes(isqrt(limit));
    let partials: Vec<KahanSum> = segment_ranges(limit, PRODUCT_SEGMENT)
        .par_iter()
        .map(|&(lo, hi)| {
            let mut sum = KahanSum::new();
            primes_in_segment(lo, hi, &base, |p| sum.add(term(p)));
            sum
        })
        .collect();
    let mut total = KahanSum::new();
    for part in &partials {
        total.merge(part);
    }
    total.value()
}

/// `B_q`: the Gamma factor, the `(1 - 1/q)` factor, the Euler product over
/// primes `p != q`, `p != 1 mod q` truncated at `cutoff`, and the
/// nonprincipal `L(1, chi)` product.
///
/// The truncation tail of the log product is below `sum_{n > P} n^-2 = 1/P`
/// because every remaining prime has `k_p >= 2`; it is folded into the error
/// bound. q = 2 is rejected: the exponent `1/(q-1) = 1` would place the
/// Gamma factor at its pole.
pub fn b_q(q: u64, cutoff: u64) -> Result<PrecisionValue> {
    if !is_odd_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    require_cutoff(cutoff)?;
    let inv_qm1 = 1.0 / (q - 1) as f64;

    let gamma_factor = gamma_real(1.0 - inv_qm1)?.recip();
    let q_factor = PrecisionValue::exact(1.0 - 1.0 / q as f64).powf(1.0 - inv_qm1);

    // Multiplicative order of each nonzero residue class; k_p depends only
    // on p mod q.
    let mut order = vec![0u32; q as usize];
    for r in 2..q {
        let mut v = r;
        let mut k = 1u32;
        while v != 1 {
            v = v * r % q;
            k += 1;
        }
        order[r as usize] = k;
    }

    let log_sum = prime_log_sum(cutoff, |p| {
        let r = (p % q) as usize;
        if r == 0 || r == 1 {
            return 0.0;
        }
        let k = order[r];
        // -(1/k) ln(1 - p^{-k})
        -(-(p as f64).powi(-(k as i32))).ln_1p() / k as f64
    });
    let euler = PrecisionValue::exp_of(log_sum, 1.0 / cutoff as f64 + LOG_SUM_ROUNDING);

    let mut l_product = ComplexPrecision::one();
    for chi in DirichletCharacter::all(q)? {
        if !chi.is_principal() {
            l_product = l_product.mul(&l_one(&chi)?);
        }
    }
    let l_factor = l_product.into_real().powf(-inv_qm1);

    Ok(gamma_factor.mul(&q_factor).mul(&euler).mul(&l_factor))
}

/// `K(Z_{q^alpha}) = B_q * C(alpha) * E_q(alpha)`. The combinatorial factors
/// are exact rationals; rounding enters only at this conversion.
pub fn k_constant(q: u64, alpha: &Partition, cutoff: u64) -> Result<PrecisionValue> {
    let b = b_q(q, cutoff)?;
    let c = c_alpha(alpha)
        .to_f64()
        .ok_or_else(|| Error::Domain("C(alpha) does not fit in f64".into()))?;
    let e = e_q_alpha(q, alpha)?
        .to_f64()
        .ok_or_else(|| Error::Domain("E_q(alpha) does not fit in f64".into()))?;
    Ok(b.scale(c).scale(e))
}

/// Artin's constant `xi = prod_p (1 - 1/(p(p-1)))` truncated at `cutoff`,
/// with tail bound `sum_{n > P} 2/n^2 = 2/P` folded into the error.
pub fn artin_xi(cutoff: u64) -> Result<PrecisionValue> {
    require_cutoff(cutoff)?;
    let log_sum = prime_log_sum(cutoff, |p| {
        let pf = p as f64;
        (-1.0 / (pf * (pf - 1.0))).ln_1p()
    });
    Ok(PrecisionValue::exp_of(
        log_sum,
        2.0 / cutoff as f64 + LOG_SUM_ROUNDING,
    ))
}

/// The constant of the maximally-non-cyclic counting formula, with its
/// heuristic tail reported separately from the rigorous rounding bound.
#[derive(Debug, Clone, Copy)]
pub struct WirsingOdoniConstant {
    pub value: f64,
    /// Rigorous part of the bound: rounding plus propagation of the xi and
    /// Gamma(xi) errors.
    pub err: f64,
    /// Heuristic tail estimate: twice the larger of the last two decades of
    /// partial-product drift. The log terms behave like (mu^2(p-1) - xi)/p,
    /// whose convergence rests on density cancellation, so no cheap rigorous
    /// tail exists.
    pub heuristic_tail: f64,
}

/// `A = 15/(14 Gamma(xi)) * prod_{p <= P} (1 + (p+1) mu^2(p-1)/p^2) (1 - 1/p)^xi`.
///
/// `sqfree` must cover `1..=P-1` for the `mu^2(p-1)` evaluations.
pub fn constant_a(cutoff: u64, sqfree: &SquarefreeTable) -> Result<WirsingOdoniConstant> {
    require_cutoff(cutoff)?;
    if sqfree.limit() < cutoff - 1 {
        return Err(Error::Config(format!(
            "squarefree table covers 1..={}, need 1..={}",
            sqfree.limit(),
            cutoff - 1
        )));
    }
    let xi = artin_xi(cutoff)?;

    // Per-prime log terms split into three bands ending at P/100, P/10, P,
    // so the two most recent decades of drift are observable for the tail
    // estimate. Each band also tracks d/dxi = sum ln(1 - 1/p).
    let p0 = cutoff / 100;
    let p1 = cutoff / 10;
    let base = base_primes(isqrt(cutoff));
    let partials: Vec<[KahanSum; 6]> = segment_ranges(cutoff, PRODUCT_SEGMENT)
        .par_iter()
        .map(|&(lo, hi)| {
            let mut acc = [KahanSum::new(); 6];
            primes_in_segment(lo, hi, &base, |p| {
                let pf = p as f64;
                let mu2 = if sqfree.is_squarefree(p - 1) { 1.0 } else { 0.0 };
                let ln_one_minus = (-1.0 / pf).ln_1p();
                let term = (mu2 * (pf + 1.0) / (pf * pf)).ln_1p() + xi.value * ln_one_minus;
                let band = if p <= p0 {
                    0
                } else if p <= p1 {
                    1
                } else {
                    2
                };
                acc[band].add(term);
                acc[3 + band].add(ln_one_minus);
            });
            acc
        })
        .collect();
    let mut bands = [KahanSum::new(); 6];
    for part in &partials {
        for (b, p) in bands.iter_mut().zip(part.iter()) {
            b.merge(p);
        }
    }

    let s0 = bands[0].value();
    let s1 = s0 + bands[1].value();
    let s2 = s1 + bands[2].value();
    let dxi = bands[3].value() + bands[4].value() + bands[5].value();

    let gamma_xi = gamma_real(xi.value)?;
    // |d Gamma(xi)/d xi| = Gamma(xi) |psi(xi)|.
    let gamma_err = gamma_xi.err + gamma_xi.value * digamma_any(xi.value).abs() * xi.err;
    let prefactor = PrecisionValue::new(gamma_xi.value, gamma_err)
        .recip()
        .scale(15.0 / 14.0);
    let product = PrecisionValue::exp_of(s2, dxi.abs() * xi.err + LOG_SUM_ROUNDING);
    let a = prefactor.mul(&product);

    let drift = (s2 - s1).abs().max((s1 - s0).abs());
    Ok(WirsingOdoniConstant {
        value: a.value,
        err: a.err,
        heuristic_tail: a.value * 2.0 * drift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::squarefree_sieve;

    #[test]
    fn b_q_reference_truncations() {
        // Independent mpmath evaluation of the same truncated products.
        let cases = [
            (3u64, 1_000_000u64, 0.704_498_421_607_991_5),
            (5, 1_000_000, 0.924_053_668_501_156_6),
            (7, 1_000_000, 1.006_874_070_229_606_2),
        ];
        for (q, cutoff, want) in cases {
            let got = b_q(q, cutoff).unwrap();
            assert!(
                (got.value - want).abs() < 1e-12,
                "B_{q}({cutoff}) = {} want {want}",
                got.value
            );
            assert!(got.value > 0.0);
        }
        assert!(b_q(2, 1_000_000).is_err());
        assert!(b_q(3, 10).is_err());
    }

    #[test]
    fn b_q_positive_for_small_q() {
        for q in [3u64, 5, 7, 11, 13] {
            assert!(b_q(q, 10_000).unwrap().value > 0.0);
        }
    }

    #[test]
    fn b3_l_factor_is_closed_form() {
        // For q = 3 the L factor equals (pi/(3 sqrt 3))^(-1/2).
        let chi = DirichletCharacter::new(3, 1).unwrap();
        let l = l_one(&chi).unwrap().into_real().powf(-0.5);
        let want = (std::f64::consts::PI / (3.0 * 3.0f64.sqrt())).powf(-0.5);
        assert!((l.value - want).abs() < 1e-10);
    }

    #[test]
    fn k_constant_compositions() {
        let b3 = b_q(3, 10_000).unwrap().value;
        let k_empty = k_constant(3, &Partition::empty(), 10_000).unwrap();
        assert!((k_empty.value - b3 * 4.0 / 3.0).abs() < 1e-14);

        let alpha = Partition::new(vec![1, 1]).unwrap();
        let k11 = k_constant(3, &alpha, 10_000).unwrap();
        assert!((k11.value - b3 * 0.5 * (4.0 / 27.0)).abs() < 1e-14);
        assert!(k11.value > 0.0);
    }

    #[test]
    fn artin_xi_reference_truncations() {
        let cases = [
            (100u64, 0.374_640_361_016_056_2),
            (10_000, 0.373_959_484_467_106_3),
            (1_000_000, 0.373_955_838_964_330_04),
        ];
        for (cutoff, want) in cases {
            let got = artin_xi(cutoff).unwrap();
            assert!(
                (got.value - want).abs() < 1e-13,
                "xi({cutoff}) = {} want {want}",
                got.value
            );
        }
    }

    #[test]
    fn artin_xi_monotone_decreasing_in_cutoff() {
        let mut prev = f64::INFINITY;
        for cutoff in [100u64, 1000, 10_000, 100_000] {
            let v = artin_xi(cutoff).unwrap().value;
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn artin_partial_product_at_two() {
        // First factor alone: 1 - 1/(2*1) = 1/2. The smallest accepted
        // cutoff is 100, so check the log-sum route directly.
        let s = prime_log_sum(2, |p| {
            let pf = p as f64;
            (-1.0 / (pf * (pf - 1.0))).ln_1p()
        });
        assert!((s.exp() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn constant_a_reference_and_prefactor() {
        let sqfree = squarefree_sieve(1_000_000);
        let a = constant_a(1_000_000, &sqfree).unwrap();
        // mpmath reference with exact xi gives 0.803250297526142;
        // truncated xi shifts the value within a few parts in 1e6.
        assert!(
            (a.value - 0.803_250_297_526_142_4).abs() < 2e-5,
            "A(1e6) = {}",
            a.value
        );
        assert!(a.value > 0.0);
        assert!(a.heuristic_tail > 0.0);

        // The p = 2 factor of the product: mu^2(2 - 1) = 1, so the per-prime
        // term exponentiates to (1 + 3/4) * (1/2)^xi, and the partial product
        // at P = 2 is (15/14) * (1 + 3/4) * (1/2)^xi / Gamma(xi).
        let xi = artin_xi(1_000_000).unwrap().value;
        let term = (3.0f64 / 4.0).ln_1p() + xi * (-0.5f64).ln_1p();
        let partial_at_two = 15.0 / (14.0 * gamma_real(xi).unwrap().value) * term.exp();
        let closed_form =
            15.0 / (14.0 * gamma_real(xi).unwrap().value) * (1.0 + 3.0 / 4.0) * 0.5f64.powf(xi);
        assert!((partial_at_two - closed_form).abs() < 1e-14);
    }

    #[test]
    fn two_cutoff_honesty_small() {
        // |value(P2) - value(P1)| <= err(P1) + err(P2) already at small
        // cutoffs; the 1e6 vs 1e7 case runs in the integration suite.
        for (p1, p2) in [(1_000u64, 10_000u64), (10_000, 100_000)] {
            let a = b_q(3, p1).unwrap();
            let b = b_q(3, p2).unwrap();
            assert!((a.value - b.value).abs() <= a.err + b.err);
            let xa = artin_xi(p1).unwrap();
            let xb = artin_xi(p2).unwrap();
            assert!((xa.value - xb.value).abs() <= xa.err);
        }
    }
}
