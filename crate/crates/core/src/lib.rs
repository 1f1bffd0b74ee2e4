#![cfg_attr(not(test), no_std)]

//! Algebra of separators and fingerprint congruences in finite semigroups.
//!
//! A finite semigroup is a set `{0, …, n−1}` together with an associative
//! binary operation given as an n×n Cayley table. This crate computes, for
//! such tables:
//!
//! * idealizers `Id(A)` and separators `Sep(A) = Id(A) ∩ Id(S∖A)` of subsets,
//! * congruences, quotients, and *monoid congruences* (congruences whose
//!   quotient has an identity element),
//! * the fingerprint relations `{(x, y) | x·a·y ∈ H}` and the congruences
//!   they induce, for a single subset `H` and for families of subsets,
//! * exhaustive checks of the five structure theorems tying these together
//!   (see [`theorems`]),
//! * exhaustive and random enumeration of small Cayley tables.
//!
//! Everything is deterministic: iteration follows fixed orders, randomized
//! pieces are seeded, and reports serialize identically across runs.
//!
//! The crate is `no_std` (with `alloc`); parsing and serialization work on
//! in-memory strings. File and process concerns live in the companion CLI
//! crate.

extern crate alloc;

pub mod enumerate;
pub mod fingerprint;
pub mod partition;
pub mod relations;
pub mod semigroup;
pub mod separator;
pub mod subset;
pub mod theorems;

pub use fingerprint::{Family, Fingerprint};
pub use partition::Partition;
pub use relations::Congruence;
pub use semigroup::Semigroup;
pub use separator::Side;
pub use subset::SubsetMask;

/// Default size caps for the operations whose cost grows explosively.
///
/// Callers pass caps explicitly; these are the defaults the CLI applies
/// when neither environment variables nor `--force` override them.
pub mod caps {
    /// Congruence enumeration scans all set partitions (Bell numbers).
    pub const CONGRUENCE_ORDER: usize = 8;
    /// Subset-family enumeration scans all 2ⁿ subsets.
    pub const SUBSET_ORDER: usize = 20;
    /// Exhaustive enumeration of all tables of one order.
    pub const ENUMERATE_GENERAL: usize = 3;
    /// Exhaustive enumeration of commutative tables of one order.
    pub const ENUMERATE_COMMUTATIVE: usize = 4;
    /// Canonical forms scan all n! relabelings.
    pub const CANONICALIZE: usize = 6;
    /// Random table sampling backtracks through large search trees.
    pub const SAMPLE: usize = 8;
}
