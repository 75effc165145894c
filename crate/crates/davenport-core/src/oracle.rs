//! Independent brute-force reference implementations.
//!
//! Nothing here shares code with the incremental engine: reducibility
//! enumerates proper sub-multisets outright, the Davenport constant is
//! found by checking every multiset of each length, and the group
//! constant goes through the classical zero-sum-free definition.  The
//! verification suites and acceptance tests play these against the fast
//! paths.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::monoid::FiniteMonoid;
use crate::ring::{Element, RingSpec};
use crate::Limits;

/// Reducibility by direct enumeration of every proper sub-multiset.
pub fn is_reducible_naive<M: FiniteMonoid>(monoid: &M, seq: &[usize]) -> bool {
    // Multiplicity vector over the distinct elements.
    let mut distinct: Vec<(usize, usize)> = Vec::new();
    for &x in seq {
        match distinct.iter_mut().find(|(e, _)| *e == x) {
            Some((_, c)) => *c += 1,
            None => distinct.push((x, 1)),
        }
    }
    let total = seq
        .iter()
        .fold(monoid.identity(), |acc, &x| monoid.combine(acc, x));
    let mut counts = vec![0usize; distinct.len()];
    loop {
        // Every multiplicity vector except the full one is a proper
        // sub-multiset (the all-zero vector is the empty sequence).
        let is_full = counts
            .iter()
            .zip(&distinct)
            .all(|(&c, &(_, full))| c == full);
        if !is_full {
            let mut acc = monoid.identity();
            for (&c, &(e, _)) in counts.iter().zip(&distinct) {
                for _ in 0..c {
                    acc = monoid.combine(acc, e);
                }
            }
            if acc == total {
                return true;
            }
        }
        // Advance the mixed-radix counter over sub-multiset multiplicities.
        let mut i = 0;
        loop {
            if i == counts.len() {
                return false;
            }
            counts[i] += 1;
            if counts[i] <= distinct[i].1 {
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

/// Visits every multiset of the given length over `0..order` as a
/// non-decreasing index vector; stops early when the visitor returns
/// true, and reports whether it did.
pub fn for_each_multiset<F: FnMut(&[usize]) -> bool>(order: usize, len: usize, f: &mut F) -> bool {
    fn recurse<F: FnMut(&[usize]) -> bool>(
        order: usize,
        len: usize,
        from: usize,
        buf: &mut Vec<usize>,
        f: &mut F,
    ) -> bool {
        if buf.len() == len {
            return f(buf);
        }
        for x in from..order {
            buf.push(x);
            if recurse(order, len, x, buf, f) {
                buf.pop();
                return true;
            }
            buf.pop();
        }
        false
    }
    recurse(order, len, 0, &mut Vec::with_capacity(len), f)
}

/// The least `ℓ` such that every length-`ℓ` multiset is reducible,
/// entirely by naive enumeration.
pub fn davenport_naive<M: FiniteMonoid>(monoid: &M, safety_cap: usize) -> Result<u32, Error> {
    for len in 1..=safety_cap {
        let mut all_reducible = true;
        for_each_multiset(monoid.order(), len, &mut |seq| {
            if !is_reducible_naive(monoid, seq) {
                all_reducible = false;
                true
            } else {
                false
            }
        });
        if all_reducible {
            return Ok(len as u32);
        }
    }
    Err(Error::limit(alloc::format!(
        "no reducible length found up to safety cap {safety_cap}"
    )))
}

/// Does some nonempty sub-multiset have the identity as its total?
fn has_zero_sum<M: FiniteMonoid>(monoid: &M, seq: &[usize]) -> bool {
    let n = seq.len();
    debug_assert!(n < usize::BITS as usize);
    for mask in 1usize..(1 << n) {
        let mut acc = monoid.identity();
        for (i, &x) in seq.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc = monoid.combine(acc, x);
            }
        }
        if acc == monoid.identity() {
            return true;
        }
    }
    false
}

/// `D(G)` through the classical definition: one plus the longest
/// zero-sum-free multiset, with zero-sum-freeness tested by direct
/// subset enumeration.
pub fn davenport_group_classical<M: FiniteMonoid>(group: &M) -> u32 {
    fn extend<M: FiniteMonoid>(group: &M, seq: &mut Vec<usize>, from: usize, best: &mut usize) {
        *best = (*best).max(seq.len());
        for x in from..group.order() {
            seq.push(x);
            if !has_zero_sum(group, seq) {
                extend(group, seq, x, best);
            }
            seq.pop();
        }
    }
    let mut best = 0;
    extend(group, &mut Vec::new(), 0, &mut best);
    best as u32 + 1
}

/// Definitional Green's preorder: searches all of `S_R` for a witness
/// factor.  Guarded by the enumeration cap.
pub fn leq_h_definitional(
    ring: &RingSpec,
    a: &Element,
    b: &Element,
    limits: &Limits,
) -> Result<bool, Error> {
    if a == b {
        return Ok(true);
    }
    if ring.semigroup_order() > u128::from(limits.max_enumeration) {
        return Err(Error::limit("definitional search exceeds enumeration cap".to_string()));
    }
    for idx in 0..ring.order() {
        let c = ring.element_at(idx);
        if &ring.mul(b, &c)? == a {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(moduli: &[u64]) -> RingSpec {
        RingSpec::new(moduli.to_vec()).unwrap()
    }

    #[test]
    fn naive_reducibility_matches_hand_cases() {
        let z4 = ring(&[4]);
        assert!(!is_reducible_naive(&z4, &[2, 2]));
        assert!(is_reducible_naive(&z4, &[2, 2, 2]));
        assert!(!is_reducible_naive(&z4, &[]));
        // Identity index is 1 in Z_4; any sequence containing it reduces.
        assert!(is_reducible_naive(&z4, &[1, 3]));
    }

    #[test]
    fn naive_davenport_small_rings() {
        assert_eq!(davenport_naive(&ring(&[2]), 8).unwrap(), 2);
        assert_eq!(davenport_naive(&ring(&[4]), 8).unwrap(), 3);
        assert_eq!(davenport_naive(&ring(&[6]), 8).unwrap(), 3);
    }

    #[test]
    fn classical_group_route() {
        use crate::group::AbelianGroupSpec;
        let g = AbelianGroupSpec::new(vec![2, 2]).unwrap();
        assert_eq!(davenport_group_classical(&g), 3);
        let g = AbelianGroupSpec::new(vec![6]).unwrap();
        assert_eq!(davenport_group_classical(&g), 6);
        assert_eq!(davenport_group_classical(&AbelianGroupSpec::trivial()), 1);
    }

    #[test]
    fn definitional_preorder_spot_checks() {
        let limits = Limits::default();
        let z4 = ring(&[4]);
        let one = z4.element(vec![1]).unwrap();
        let two = z4.element(vec![2]).unwrap();
        assert!(leq_h_definitional(&z4, &two, &one, &limits).unwrap());
        assert!(!leq_h_definitional(&z4, &one, &two, &limits).unwrap());
    }
}
