//! Fixed-universe bit set over element indices.

use alloc::vec;
use alloc::vec::Vec;

/// Set of indices in `[0, universe)`, packed into 64-bit words.
///
/// Iteration order is ascending, so every consumer is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSet {
    words: Vec<u64>,
    universe: usize,
}

impl IndexSet {
    pub fn new(universe: usize) -> Self {
        IndexSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Inserts `idx`; returns whether it was newly added.
    pub fn insert(&mut self, idx: usize) -> bool {
        debug_assert!(idx < self.universe);
        let (w, b) = (idx / 64, idx % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, idx: usize) -> bool {
        debug_assert!(idx < self.universe);
        self.words[idx / 64] & (1 << (idx % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &IndexSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iter_roundtrip() {
        let mut s = IndexSet::new(130);
        for idx in [0, 63, 64, 100, 129] {
            assert!(s.insert(idx));
            assert!(!s.insert(idx));
        }
        let got: Vec<usize> = s.iter().collect();
        assert_eq!(got, alloc::vec![0, 63, 64, 100, 129]);
        assert_eq!(s.len(), 5);
        assert!(s.contains(64));
        assert!(!s.contains(65));
    }

    #[test]
    fn union() {
        let mut a = IndexSet::new(10);
        let mut b = IndexSet::new(10);
        a.insert(1);
        b.insert(2);
        a.union_with(&b);
        assert_eq!(a.iter().collect::<Vec<_>>(), alloc::vec![1, 2]);
    }
}
