//! Partitions label finite abelian q-groups: the partition
//! `(a_1, ..., a_j)` stands for `Z_{q^{a_1}} x ... x Z_{q^{a_j}}` and doubles
//! as the Sylow signature used as a census key. Alongside the type live the
//! two combinatorial constants attached to a partition: the conjugate-based
//! `C(alpha)` and the group-size factor `E_q(alpha)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::primes::is_odd_prime;

/// A nonincreasing sequence of positive integers. The empty partition is
/// allowed and denotes the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from arbitrary part order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Caller promises `parts` is already sorted nonincreasing and positive.
    pub(crate) fn from_sorted_desc(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// ell(alpha), the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn sum(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Largest part, or 0 for the empty partition.
    pub fn first(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// The transpose of the Ferrers diagram: part `j` of the conjugate is
    /// `#{k : parts[k] >= j}`.
    pub fn conjugate(&self) -> Partition {
        let max = self.first();
        let mut conj = Vec::with_capacity(max as usize);
        for j in 1..=max {
            let c = self.parts.iter().take_while(|&&p| p >= j).count() as u32;
            conj.push(c);
        }
        Partition::from_sorted_desc(conj)
    }

    /// Removes one occurrence of `part`, or returns `None` if absent.
    pub fn remove_one(&self, part: u32) -> Option<Partition> {
        let idx = self.parts.iter().position(|&p| p == part)?;
        let mut parts = self.parts.clone();
        parts.remove(idx);
        Some(Partition::from_sorted_desc(parts))
    }
}

/// Text form used by the CLI and the CSV/JSON exports: `[3,1]`, `[]`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::PartitionParse(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in inner.split(',') {
            let v: u32 = tok
                .trim()
                .parse()
                .map_err(|_| Error::PartitionParse(s.to_string()))?;
            if v == 0 {
                return Err(Error::ZeroPart);
            }
            parts.push(v);
        }
        Partition::new(parts)
    }
}

fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    acc
}

/// `C(alpha) = prod_{u=1}^{alpha_1} 1 / (a_u - a_{u+1})!` where `a` is the
/// conjugate partition (with `a_{alpha_1 + 1} = 0`). Exact rational; equals
/// `1 / prod_j m_j!` with `m_j` the multiplicity of `j` among the parts.
pub fn c_alpha(p: &Partition) -> BigRational {
    let conj = p.conjugate();
    let a = conj.parts();
    let mut denom = BigInt::one();
    for u in 0..a.len() {
        let next = if u + 1 < a.len() { a[u + 1] } else { 0 };
        denom *= factorial(a[u] - next);
    }
    BigRational::new(BigInt::one(), denom)
}

/// `E_q(alpha) = (q + 1) / q^{1 + sum(alpha)}`, exact. Rejects q that is not
/// an odd prime.
pub fn e_q_alpha(q: u64, p: &Partition) -> Result<BigRational> {
    if !is_odd_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    let exponent = 1 + p.sum();
    let exponent = u32::try_from(exponent)
        .map_err(|_| Error::Domain(format!("partition sum {} too large", p.sum())))?;
    Ok(BigRational::new(
        BigInt::from(q + 1),
        BigInt::from(q).pow(exponent),
    ))
}
