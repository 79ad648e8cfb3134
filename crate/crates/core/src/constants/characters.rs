//! Dirichlet characters mod an odd prime q, represented through a primitive
//! root, and the values L(1, chi) they feed into the Euler-product constants.

use num_complex::Complex64;

use crate::constants::precision::ComplexPrecision;
use crate::constants::special::digamma;
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::primes::is_odd_prime;

/// Least multiplicative order of `p` modulo `q`; rejects `q | p`.
pub fn mult_order(p: u64, q: u64) -> Result<u64> {
    if !is_odd_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    if p.is_multiple_of(q) {
        return Err(Error::OrderUndefined { p, q });
    }
    let a = p % q;
    let mut v = a;
    let mut k = 1;
    while v != 1 {
        v = v * a % q;
        k += 1;
    }
    Ok(k)
}

/// Smallest primitive root of an odd prime q.
pub fn primitive_root(q: u64) -> Result<u64> {
    if !is_odd_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    for g in 2..q {
        if mult_order(g, q)? == q - 1 {
            return Ok(g);
        }
    }
    unreachable!("every prime has a primitive root")
}

/// A character mod q given by `chi(g^k) = e^{2 pi i j k / (q-1)}` for the
/// smallest primitive root g; `j = 0` is the principal character.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    q: u64,
    index: u64,
    generator: u64,
    /// values[a - 1] = chi(a) for a = 1..q-1.
    values: Vec<Complex64>,
}

impl DirichletCharacter {
    pub fn new(q: u64, index: u64) -> Result<Self> {
        if !is_odd_prime(q) {
            return Err(Error::NotOddPrime(q));
        }
        let index = index % (q - 1);
        let g = primitive_root(q)?;
        let mut values = vec![Complex64::new(0.0, 0.0); (q - 1) as usize];
        let mut pow = 1u64;
        for k in 0..q - 1 {
            // Reduce j*k mod q-1 before forming the angle.
            let t = (index * k) % (q - 1);
            let angle = 2.0 * std::f64::consts::PI * t as f64 / (q - 1) as f64;
            values[(pow - 1) as usize] = Complex64::new(angle.cos(), angle.sin());
            pow = pow * g % q;
        }
        Ok(Self {
            q,
            index,
            generator: g,
            values,
        })
    }

    /// All q - 1 characters mod q, principal first.
    pub fn all(q: u64) -> Result<Vec<Self>> {
        (0..q.saturating_sub(1))
            .map(|j| Self::new(q, j))
            .collect()
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    /// chi(a); zero on multiples of q.
    pub fn eval(&self, a: u64) -> Complex64 {
        let r = a % self.q;
        if r == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[(r - 1) as usize]
        }
    }

    /// The conjugate character has index q - 1 - j.
    pub fn conjugate(&self) -> Self {
        let mut c = self.clone();
        c.index = (self.q - 1 - self.index) % (self.q - 1);
        for v in c.values.iter_mut() {
            *v = v.conj();
        }
        c
    }
}

/// `L(1, chi)` for nonprincipal chi, via the finite closed form
/// `-(1/q) cdot sum_{a=1}^{q-1} chi(a) psi(a/q)`. The error bound is
/// inherited from the digamma evaluations.
pub fn l_one(chi: &DirichletCharacter) -> Result<ComplexPrecision> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter);
    }
    let q = chi.modulus();
    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    let mut err = 0.0;
    for a in 1..q {
        let psi = digamma(a as f64 / q as f64)?;
        let c = chi.eval(a);
        re.add(c.re * psi.value);
        im.add(c.im * psi.value);
        err += psi.err + psi.value.abs() * 1e-15;
    }
    let value = Complex64::new(-re.value() / q as f64, -im.value() / q as f64);
    Ok(ComplexPrecision::new(value, err / q as f64 + 1e-15))
}

/// Reference evaluation of `L(1, chi)` by the Dirichlet series, averaging
/// the last q partial sums to cancel the leading oscillation. Slow; kept as
/// an independent oracle for the digamma route.
pub fn l_one_dirichlet_series(chi: &DirichletCharacter, terms: u64) -> Result<Complex64> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter);
    }
    let q = chi.modulus();
    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    let mut avg = Complex64::new(0.0, 0.0);
    for n in 1..=terms + q - 1 {
        let c = chi.eval(n);
        let inv = 1.0 / n as f64;
        re.add(c.re * inv);
        im.add(c.im * inv);
        if n > terms - 1 {
            avg += Complex64::new(re.value(), im.value());
        }
    }
    Ok(avg / q as f64)
}
