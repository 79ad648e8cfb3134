use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("q = {0} must be an odd prime")]
    NotOddPrime(u64),

    #[error("the q-adic valuation of 0 is undefined")]
    ZeroValuation,

    #[error("partition parts must be positive")]
    ZeroPart,

    #[error("cannot parse {0:?} as a partition (expected e.g. \"[3,1]\" or \"[]\")")]
    PartitionParse(String),

    #[error("factorization is not canonical: {0}")]
    BadFactorization(String),

    #[error("n = {n} exceeds the oracle cap {cap} (cost is one modular power per residue)")]
    OracleCap { n: u64, cap: u64 },

    #[error("{0} is not a prime power >= 2")]
    NotPrimePower(u64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("L(1, chi) is only defined here for nonprincipal characters")]
    PrincipalCharacter,

    #[error("multiplicative order of {p} mod {q} undefined: {q} divides {p}")]
    OrderUndefined { p: u64, q: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no census table available for x = {0}")]
    MissingCensus(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
