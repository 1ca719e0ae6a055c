//! Extremal intersecting families of bounded multisets.
//!
//! A k-multiset in `[n]_m` is a multiset of size `k` over the symbols
//! `1..=n` in which every symbol repeats at most `m` times (`m` may be
//! unbounded). This crate constructs the star family `E` and the
//! Hilton–Milner family `H`, counts them through the support-level layer
//! decomposition, and verifies the bound and uniqueness statements for
//! non-trivial intersecting families by exhaustive search at small `n`.
//!
//! Module map:
//!
//! * [`multiset`]: multiplicity vectors, enumeration, permutations, family predicates.
//! * [`universe`]: subsets of `[n]`, set families, and the families `U`, `R`, `V`.
//! * [`coeffs`]: the table `C(k, l)` of fixed-support multiset counts.
//! * [`families`]: the named families `E` and `H`, supports and preimages.
//! * [`search`]: enumeration of maximal intersecting set families and the verifiers.
//! * [`canon`]: canonical labelings under permutations of the ground set.

pub mod canon;
pub mod coeffs;
mod error;
pub mod families;
pub mod math;
pub mod multiset;
mod params;
pub mod search;
pub mod universe;

pub use error::{Error, Result};
pub use multiset::{Multiset, MultisetFamily, Permutation, TotalIntersection};
pub use params::{Multiplicity, Params};
pub use universe::{SetFamily, SubsetMask};

/// Version string embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
