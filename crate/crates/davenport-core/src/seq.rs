//! Sequences (finite multisets) over `S_R` and the incremental
//! reducibility state.
//!
//! A sequence is reducible when some proper sub-multiset has the same
//! total; the empty sequence is a proper sub-multiset of every nonempty
//! sequence, and is itself not reducible.

use alloc::vec::Vec;

use crate::bitset::IndexSet;
use crate::error::Error;
use crate::monoid::FiniteMonoid;
use crate::ring::{Element, RingSpec};

/// A finite multiset of elements, stored canonically sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Sequence {
    terms: Vec<Element>,
}

impl Sequence {
    pub fn empty() -> Self {
        Sequence { terms: Vec::new() }
    }

    /// Builds a sequence from terms in any order, validating them
    /// against the ring and sorting canonically.
    pub fn new(ring: &RingSpec, terms: Vec<Element>) -> Result<Self, Error> {
        for t in &terms {
            if t.rank() != ring.rank() {
                return Err(Error::invalid(alloc::format!(
                    "term rank {} does not match ring rank {}",
                    t.rank(),
                    ring.rank()
                )));
            }
        }
        let mut terms = terms;
        terms.sort();
        Ok(Sequence { terms })
    }

    pub(crate) fn from_sorted(terms: Vec<Element>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] <= w[1]));
        Sequence { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Element] {
        &self.terms
    }

    /// Multiplicity `v_a` of one element.
    pub fn multiplicity(&self, a: &Element) -> usize {
        self.terms.iter().filter(|t| *t == a).count()
    }

    /// Appends a term, keeping the canonical order.
    pub fn push(&mut self, a: Element) {
        let pos = self.terms.partition_point(|t| t <= &a);
        self.terms.insert(pos, a);
    }

    /// Concatenation `self · other`.
    pub fn join(&self, other: &Sequence) -> Sequence {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        terms.sort();
        Sequence { terms }
    }

    /// Is `self` a sub-multiset of `other`?
    pub fn divides(&self, other: &Sequence) -> bool {
        // Both sorted: a single merge pass suffices.
        let mut it = other.terms.iter();
        'outer: for t in &self.terms {
            for o in it.by_ref() {
                match o.cmp(t) {
                    core::cmp::Ordering::Less => continue,
                    core::cmp::Ordering::Equal => continue 'outer,
                    core::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    /// `self · other^{[-1]}`: removes one copy of every term of `other`.
    pub fn remove(&self, other: &Sequence) -> Option<Sequence> {
        if !other.divides(self) {
            return None;
        }
        let mut terms = self.terms.clone();
        for t in &other.terms {
            let pos = terms.iter().position(|x| x == t)?;
            terms.remove(pos);
        }
        Some(Sequence { terms })
    }

    pub(crate) fn indices(&self, ring: &RingSpec) -> Vec<usize> {
        self.terms.iter().map(|t| ring.index_of(t)).collect()
    }

    pub(crate) fn from_indices(ring: &RingSpec, indices: &[usize]) -> Sequence {
        let mut terms: Vec<Element> = indices.iter().map(|&i| ring.element_at(i)).collect();
        terms.sort();
        Sequence { terms }
    }
}

/// Product of all terms; the identity for the empty sequence.
pub fn sigma(ring: &RingSpec, t: &Sequence) -> Element {
    let mut acc = ring.one();
    for term in t.terms() {
        acc = ring.mul(&acc, term).expect("terms were validated");
    }
    acc
}

/// Incremental reducibility state of a sequence `T`: the running total
/// `σ(T)` and the set of totals of all proper sub-multisets of `T`,
/// both as element indices.
///
/// Appending a term `a` follows the recurrence
/// `proper(T·a) = proper(T) ∪ proper(T)·a ∪ {σ(T)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsumState {
    total: usize,
    proper: IndexSet,
}

impl SubsumState {
    /// State of the empty sequence: total is the identity, no proper
    /// sub-multisets at all.
    pub fn empty<M: FiniteMonoid>(monoid: &M) -> Self {
        SubsumState {
            total: monoid.identity(),
            proper: IndexSet::new(monoid.order()),
        }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn proper_sums(&self) -> &IndexSet {
        &self.proper
    }

    /// State for `T·a` given the state for `T`.
    pub fn extend<M: FiniteMonoid>(&self, monoid: &M, a: usize) -> Self {
        let mut proper = self.proper.clone();
        for s in self.proper.iter() {
            proper.insert(monoid.combine(s, a));
        }
        proper.insert(self.total);
        SubsumState {
            total: monoid.combine(self.total, a),
            proper,
        }
    }

    /// Does some proper sub-multiset reach the running total?
    pub fn is_reducible(&self) -> bool {
        self.proper.contains(self.total)
    }
}

/// Spec-level wrapper: extends a ring-sequence state by one element.
pub fn extend_subsums(ring: &RingSpec, state: &SubsumState, a: &Element) -> SubsumState {
    state.extend(ring, ring.index_of(a))
}

/// Reducibility of a whole sequence, via the incremental state.
pub fn is_reducible(ring: &RingSpec, t: &Sequence) -> bool {
    let mut state = SubsumState::empty(ring);
    for term in t.terms() {
        state = state.extend(ring, ring.index_of(term));
    }
    state.is_reducible()
}
