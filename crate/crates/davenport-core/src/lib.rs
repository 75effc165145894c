//! Exact Davenport constants of the multiplicative semigroup of
//! `Z_{n1} ⊕ … ⊕ Z_{nr}` and of its unit group.
//!
//! The crate is organized around five layers:
//!
//! - [`ring`]: the ring `R = Z_{n1} ⊕ … ⊕ Z_{nr}`, its multiplicative
//!   semigroup `S_R`, unit group enumeration and structure, and the
//!   number-theoretic helpers (p-adic valuations, gcd profiles, CRT).
//! - [`group`]: abstract finite abelian groups given by cyclic factor
//!   orders, with subgroup closures, quotients and invariant factors.
//! - [`green`]: Green's preorder and congruence on `S_R`, stabilizer
//!   subgroups in `U(S_R)`, and the separating-unit construction.
//! - [`seq`] and [`search`]: sequences over `S_R`, incremental
//!   reducibility, and the exact pruned search for the longest
//!   irreducible sequence, from which `D(S_R) = d(S_R) + 1`.
//! - [`construct`] and [`checks`]: executable forms of the witness and
//!   reduction constructions that certify the bounds
//!   `D(U(S_R)) + P_2 ≤ D(S_R) ≤ D(U(S_R)) + δ`, plus the exhaustive
//!   verification suites run by the CLI.
//!
//! Everything is deterministic: elements are ordered by the mixed-radix
//! index of their residue tuple, sequences are kept canonically sorted,
//! and searches report the lexicographically least maximal witness
//! regardless of how branches are scheduled.
//!
//! The crate is `no_std` (with `alloc`); IO, timing and parallel
//! drivers live in the companion CLI crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arith;
pub mod bitset;
pub mod checks;
pub mod construct;
pub mod error;
pub mod green;
pub mod group;
pub mod monoid;
pub mod oracle;
pub mod ring;
pub mod search;
pub mod seq;

pub use error::{Error, Falsification};
pub use green::{separating_unit, stabilizer, StabilizerSubgroup};
pub use group::AbelianGroupSpec;
pub use monoid::FiniteMonoid;
pub use ring::{Element, GcdProfile, RingInvariants, RingSpec, UnitGroupStructure};
pub use search::{DavenportReport, SearchOutcome};
pub use seq::{Sequence, SubsumState};

/// Resource limits guarding every exhaustive operation.
///
/// Enumeration (units, stabilizers, search tables) is bounded by
/// `max_enumeration`; the sequence search is bounded by `node_budget`
/// extension attempts and aborts with a partial, inexact result when the
/// budget runs out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest semigroup/group order any enumeration may walk.
    pub max_enumeration: u64,
    /// Search node budget (extension attempts across all branches).
    pub node_budget: u64,
    /// Largest unit group for which O(|U|^2) pairwise certification runs.
    pub pairwise_check: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enumeration: 1_000_000,
            node_budget: 100_000_000,
            pairwise_check: 4096,
        }
    }
}
