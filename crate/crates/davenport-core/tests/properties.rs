//! Cross-cutting property suites: Green structure against the
//! definitional oracles, engine against naive enumeration, and the
//! group-route consistency checks.

use davenport_core::checks::green_suite;
use davenport_core::green::{h_equiv, leq_h};
use davenport_core::group::AbelianGroupSpec;
use davenport_core::oracle::{
    davenport_group_classical, davenport_naive, for_each_multiset, is_reducible_naive,
};
use davenport_core::ring::RingSpec;
use davenport_core::search::{davenport_group, davenport_lower_formula, davenport_semigroup};
use davenport_core::seq::{is_reducible, sigma, Sequence, SubsumState};
use davenport_core::{FiniteMonoid, Limits};

fn ring(moduli: &[u64]) -> RingSpec {
    RingSpec::new(moduli.to_vec()).unwrap()
}

/// Every ring (any rank) with semigroup order at most `max`.
fn small_rings(max: u64) -> Vec<Vec<u64>> {
    fn extend(max: u64, prefix: &mut Vec<u64>, min: u64, out: &mut Vec<Vec<u64>>) {
        for n in min..=max {
            prefix.push(n);
            out.push(prefix.clone());
            extend(max / n, prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(max, &mut Vec::new(), 2, &mut out);
    out
}

#[test]
fn small_ring_corpus_is_complete() {
    let corpus = small_rings(16);
    assert!(corpus.contains(&vec![16]));
    assert!(corpus.contains(&vec![2, 2, 2, 2]));
    assert!(corpus.contains(&vec![2, 8]));
    assert!(!corpus.iter().any(|m| m.iter().product::<u64>() > 16));
}

#[test]
fn green_suite_full_small_corpus() {
    let limits = Limits::default();
    for moduli in small_rings(36) {
        let report = green_suite(&ring(&moduli), &limits).unwrap();
        assert!(
            report.passed(),
            "green suite violations on {moduli:?}: {:?}",
            report.violations
        );
    }
}

#[test]
fn sigma_is_monotone_under_subsequences() {
    // σ(T) = σ(T') · σ(rest), so σ(T) is below every subsequence total.
    let limits = Limits::default();
    for moduli in [&[12u64][..], &[4, 2], &[9]] {
        let r = ring(moduli);
        let elements = r.elements(&limits).unwrap();
        for_each_multiset(r.order(), 3, &mut |indices| {
            let t = Sequence::new(
                &r,
                indices.iter().map(|&i| elements[i].clone()).collect(),
            )
            .unwrap();
            let total = sigma(&r, &t);
            for k in 0..=t.len() {
                for_each_multiset(t.len(), k, &mut |positions| {
                    let sub = Sequence::new(
                        &r,
                        positions.iter().map(|&p| t.terms()[p].clone()).collect(),
                    )
                    .unwrap();
                    assert!(leq_h(&r, &total, &sigma(&r, &sub)));
                    false
                });
            }
            false
        });
    }
}

#[test]
fn h_classes_partition_by_profiles() {
    let limits = Limits::default();
    for moduli in [&[12u64][..], &[6, 2], &[8]] {
        let r = ring(moduli);
        let elements = r.elements(&limits).unwrap();
        for a in &elements {
            for b in &elements {
                assert_eq!(
                    h_equiv(&r, a, b),
                    r.gcd_profile(a) == r.gcd_profile(b)
                );
            }
        }
    }
}

#[test]
fn incremental_reducibility_matches_naive_enumeration() {
    let r = ring(&[12]);
    for len in 0..=4 {
        for_each_multiset(r.order(), len, &mut |indices| {
            let by_state = {
                let mut state = SubsumState::empty(&r);
                for &i in indices {
                    state = state.extend(&r, i);
                }
                state.is_reducible()
            };
            assert_eq!(by_state, is_reducible_naive(&r, indices), "at {indices:?}");
            false
        });
    }
}

#[test]
fn engine_matches_naive_davenport() {
    let limits = Limits::default();
    for moduli in [&[2u64][..], &[3], &[4], &[5], &[6], &[8], &[2, 2], &[4, 2]] {
        let r = ring(moduli);
        let engine = davenport_semigroup(&r, &limits).unwrap();
        let naive = davenport_naive(&r, r.order() + 1).unwrap();
        assert_eq!(engine.d_semigroup, naive, "ring {moduli:?}");
        assert!(engine.exact);
    }
}

#[test]
fn group_engine_matches_classical_route() {
    let limits = Limits::default();
    for factors in [vec![2], vec![3], vec![2, 2], vec![4], vec![6], vec![2, 4], vec![8]] {
        let g = AbelianGroupSpec::new(factors.clone()).unwrap();
        assert_eq!(
            davenport_group(&g, &limits).unwrap(),
            davenport_group_classical(&g),
            "group {factors:?}"
        );
    }
}

#[test]
fn group_engine_reaches_the_invariant_factor_formula() {
    // Exact for the ranks and p-groups in play here.
    let limits = Limits::default();
    for factors in [vec![2u64, 4], vec![3, 3], vec![2, 6], vec![12], vec![2, 2, 2]] {
        let g = AbelianGroupSpec::new(factors).unwrap();
        let chain = g.invariant_factors();
        assert_eq!(
            davenport_group(&g, &limits).unwrap(),
            davenport_lower_formula(&chain).unwrap()
        );
    }
}

#[test]
fn unit_ground_search_matches_abstract_unit_group() {
    let limits = Limits::default();
    for moduli in [&[8u64][..], &[9], &[12], &[15], &[4, 4], &[2, 12]] {
        let r = ring(moduli);
        let structure = r.unit_group_structure(&limits).unwrap();
        let report = davenport_semigroup(&r, &limits).unwrap();
        assert_eq!(
            report.d_units,
            davenport_group(&structure.group, &limits).unwrap(),
            "ring {moduli:?}"
        );
    }
}

#[test]
fn reported_witness_is_irreducible_and_maximal_invariants_hold() {
    let limits = Limits::default();
    for moduli in [&[9u64][..], &[12], &[2, 8], &[10]] {
        let r = ring(moduli);
        let report = davenport_semigroup(&r, &limits).unwrap();
        assert!(!is_reducible(&r, &report.witness));
        assert_eq!(report.witness.len() as u32 + 1, report.d_semigroup);
        assert_eq!(report.small_d(), report.d_semigroup - 1);
        let lower = report.d_units + report.p2;
        let upper = report.d_units + report.delta;
        assert!(lower <= report.d_semigroup && report.d_semigroup <= upper);
    }
}

#[test]
fn identity_monoid_facts() {
    // The spec-level monoid view used by the generic engine.
    let r = ring(&[4, 3]);
    assert_eq!(r.order(), 12);
    assert_eq!(r.identity(), r.index_of(&r.one()));
    let g = AbelianGroupSpec::new(vec![4, 3]).unwrap();
    assert_eq!(g.identity(), 0);
    assert_eq!(g.combine(g.identity(), 7), 7);
}
