//! Exact censuses of the structure of multiplicative groups `(Z/nZ)^x`.
//!
//! The crate has three layers:
//!
//! * **Exact counting** ([`census`], [`multgroup`], [`partitions`]): a
//!   segmented sieve streams every `n <= x` with enough of its factorization
//!   to classify the Sylow q-subgroup of `(Z/nZ)^x` by its partition
//!   signature, to decide whether the group is maximally non-cyclic, and to
//!   accumulate exact histograms of both.
//! * **Leading constants** ([`constants`]): high-precision evaluation of the
//!   Euler products, Dirichlet L-values and Gamma/digamma values that make up
//!   the constants in the asymptotic counting formulas, each paired with a
//!   rigorous (or clearly flagged heuristic) error bound.
//! * **Verification** ([`verify`]): evaluates the asymptotic main terms and
//!   compares them against census output across decades of `x`, with a
//!   trend-plus-band verdict per target.
//!
//! The `mgcensus` binary exposes all three as subcommands; see the README.

pub mod census;
pub mod constants;
pub mod error;
pub mod kahan;
pub mod multgroup;
pub mod partitions;
pub mod primes;
pub mod verify;

pub use census::{CensusConfig, CensusTable, SquarefreeTable};
pub use error::{Error, Result};
pub use multgroup::{Factorization, GroupSignature};
pub use partitions::Partition;
