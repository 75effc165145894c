//! Exhaustive verification campaigns: each suite replays one of the
//! certified facts over a whole ring (or group) and reports violations
//! as serialized counterexamples instead of asserting.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::construct::{reduce_sequence, stabilizer_chain};
use crate::error::{Error, Falsification};
use crate::green::{
    h_equiv, leq_h, separating_hypothesis, separating_unit, stabilizer, strictly_below,
    StabilizerSubgroup,
};
use crate::group::AbelianGroupSpec;
use crate::monoid::FiniteMonoid;
use crate::oracle::leq_h_definitional;
use crate::ring::{Element, RingSpec};
use crate::search::{davenport_semigroup, quotient_bound_check, DavenportReport};
use crate::seq::{sigma, Sequence};
use crate::Limits;

/// Result of one verification campaign.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub label: &'static str,
    /// Objects examined (pairs, sequences, subgroups, ...).
    pub checked: u64,
    /// Objects that met the premise of the checked implication.
    pub qualifying: u64,
    pub violations: Vec<Falsification>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn violation(&mut self, ring_desc: &str, detail: alloc::string::String) {
        self.violations.push(Falsification {
            claim: self.label.to_string(),
            context: ring_desc.to_string(),
            counterexample: detail,
        });
    }
}

/// Suites walk |S|^2 pairs with an |S| witness search each; keep that cubic.
const SUITE_MAX_ORDER: u128 = 1000;

fn suite_guard(order: u128, limits: &Limits) -> Result<(), Error> {
    if order > SUITE_MAX_ORDER || order > u128::from(limits.max_enumeration) {
        return Err(Error::limit(format!(
            "suite needs order <= {SUITE_MAX_ORDER}, got {order}"
        )));
    }
    Ok(())
}

/// Green-structure suite: the divisibility characterization of the
/// preorder against the definitional search, stabilizer monotonicity,
/// the gcd-profile characterization of the congruence, the
/// separating-unit construction on every qualifying pair, and the
/// partition facts (classes partition `S_R`, the identity's class is
/// exactly the unit group).
pub fn green_suite(ring: &RingSpec, limits: &Limits) -> Result<CheckReport, Error> {
    suite_guard(ring.semigroup_order(), limits)?;
    let desc = format!("ring {:?}", ring.moduli());
    let mut report = CheckReport {
        label: "green-structure",
        checked: 0,
        qualifying: 0,
        violations: Vec::new(),
    };
    let n = ring.order();
    let elements: Vec<Element> = (0..n).map(|i| ring.element_at(i)).collect();
    let stabilizers: Vec<StabilizerSubgroup> = elements
        .iter()
        .map(|e| stabilizer(ring, e, limits))
        .collect::<Result<_, _>>()?;

    for (ia, a) in elements.iter().enumerate() {
        for (ib, b) in elements.iter().enumerate() {
            report.checked += 1;
            let fast = leq_h(ring, a, b);
            let definitional = leq_h_definitional(ring, a, b, limits)?;
            if fast != definitional {
                report.violation(
                    &desc,
                    format!(
                        "preorder mismatch at a={:?} b={:?}: divisibility {fast}, search {definitional}",
                        a.residues(), b.residues()
                    ),
                );
                continue;
            }
            if fast && !stabilizers[ib].is_subset_of(&stabilizers[ia]) {
                report.violation(
                    &desc,
                    format!(
                        "St(b) not within St(a) for a={:?} b={:?}",
                        a.residues(),
                        b.residues()
                    ),
                );
            }
            let congruent = h_equiv(ring, a, b);
            let both_ways = definitional && leq_h_definitional(ring, b, a, limits)?;
            if congruent != both_ways {
                report.violation(
                    &desc,
                    format!(
                        "congruence mismatch at a={:?} b={:?}",
                        a.residues(),
                        b.residues()
                    ),
                );
            }
            if strictly_below(ring, a, b) && separating_hypothesis(ring, a, b) {
                report.qualifying += 1;
                // The construction re-verifies unit/fixes-a/moves-b itself.
                if let Err(e) = separating_unit(ring, a, b) {
                    report.violation(
                        &desc,
                        format!(
                            "separating unit failed for a={:?} b={:?}: {e}",
                            a.residues(),
                            b.residues()
                        ),
                    );
                } else if !stabilizers[ib].is_strict_subset_of(&stabilizers[ia]) {
                    report.violation(
                        &desc,
                        format!(
                            "St(b) not strictly within St(a) despite a separating unit, a={:?} b={:?}",
                            a.residues(), b.residues()
                        ),
                    );
                }
            }
        }
    }

    // The identity's congruence class is exactly the unit group.
    let one = ring.one();
    for e in &elements {
        if h_equiv(ring, e, &one) != ring.is_unit(e) {
            report.violation(
                &desc,
                format!("identity class mismatch at {:?}", e.residues()),
            );
        }
    }
    Ok(report)
}

/// Enumerates every H-minimal sequence (no strictly smaller
/// sub-multiset reaches the same congruence class) and checks its
/// stabilizer chain: ascending containment and at least `t - δ` strict
/// growth steps.
pub fn stabilizer_growth_suite(ring: &RingSpec, limits: &Limits) -> Result<CheckReport, Error> {
    suite_guard(ring.semigroup_order(), limits)?;
    let desc = format!("ring {:?}", ring.moduli());
    let mut report = CheckReport {
        label: "stabilizer-growth",
        checked: 0,
        qualifying: 0,
        violations: Vec::new(),
    };
    // Strictly descending prefix products cannot outlast the total
    // prime multiplicity of the moduli.
    let max_len: usize = ring
        .moduli()
        .iter()
        .map(|&n| {
            crate::arith::factorize(n)
                .iter()
                .map(|&(_, k)| k as usize)
                .sum::<usize>()
        })
        .sum();

    fn descend(
        ring: &RingSpec,
        limits: &Limits,
        report: &mut CheckReport,
        desc: &str,
        seq: &mut Vec<Element>,
        prefix: &Element,
        from: usize,
        remaining: usize,
    ) -> Result<(), Error> {
        if remaining == 0 {
            return Ok(());
        }
        for idx in from..ring.order() {
            let term = ring.element_at(idx);
            let next = ring.mul(prefix, &term)?;
            if !strictly_below(ring, &next, prefix) {
                continue;
            }
            seq.push(term);
            report.checked += 1;
            let v = Sequence::from_sorted(seq.clone());
            if is_h_minimal(ring, &v) {
                report.qualifying += 1;
                let chain = stabilizer_chain(ring, &v, limits)?;
                if !chain.containment_ok {
                    report.violation(desc, format!("chain of {v:?} is not ascending"));
                }
                if !chain.growth_bound_ok {
                    report.violation(
                        desc,
                        format!(
                            "chain of {v:?} grows strictly only at {:?}",
                            chain.strict_growth
                        ),
                    );
                }
            }
            descend(ring, limits, report, desc, seq, &next, idx, remaining - 1)?;
            seq.pop();
        }
        Ok(())
    }

    let mut seq = Vec::new();
    descend(
        ring,
        limits,
        &mut report,
        &desc,
        &mut seq,
        &ring.one(),
        0,
        max_len,
    )?;
    Ok(report)
}

/// No strictly smaller sub-multiset of `v` reaches the class of `σ(v)`.
fn is_h_minimal(ring: &RingSpec, v: &Sequence) -> bool {
    crate::construct::shortest_h_prefix(ring, v).len() == v.len()
}

fn multiset_count(order: u128, len: u32) -> u128 {
    // C(order + len - 1, len), saturating.
    let mut acc: u128 = 1;
    for i in 0..u128::from(len) {
        acc = acc.saturating_mul(order + u128::from(len) - 1 - i);
        acc /= i + 1;
    }
    acc
}

struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

const REDUCTION_EXHAUSTIVE_MAX: u128 = 100_000;
const REDUCTION_SAMPLES: u64 = 10_000;

/// Runs the proof-following reduction on every sequence of length
/// exactly `D(U(S_R)) + δ` (up to reordering), or on a fixed-seed
/// random sample when there are too many, checking that each call
/// returns a proper equal-total subsequence with a valid trace.
pub fn reduction_suite(ring: &RingSpec, limits: &Limits) -> Result<CheckReport, Error> {
    suite_guard(ring.semigroup_order(), limits)?;
    let desc = format!("ring {:?}", ring.moduli());
    let mut report = CheckReport {
        label: "reduction",
        checked: 0,
        qualifying: 0,
        violations: Vec::new(),
    };
    let base = davenport_semigroup(ring, limits)?;
    let len = base.d_units + base.delta;
    let n = ring.order();

    let run_one = |report: &mut CheckReport, indices: &[usize]| {
        report.checked += 1;
        let t = Sequence::from_indices(ring, indices);
        match reduce_sequence(ring, &t, limits) {
            Ok((out, trace)) => {
                let proper = out.len() < t.len() && out.divides(&t);
                let same_total = sigma(ring, &out) == sigma(ring, &t);
                let w_ok = !trace.zero_sum.is_empty()
                    && trace
                        .zero_sum
                        .divides(&t.remove(&trace.prefix).expect("prefix divides"));
                if !(proper && same_total && w_ok && trace.chain.containment_ok
                    && trace.chain.growth_bound_ok)
                {
                    report.violation(&desc, format!("invalid trace for {t:?}"));
                }
            }
            Err(e) => report.violation(&desc, format!("reduction failed for {t:?}: {e}")),
        }
    };

    if multiset_count(n as u128, len) <= REDUCTION_EXHAUSTIVE_MAX {
        crate::oracle::for_each_multiset(n, len as usize, &mut |indices| {
            run_one(&mut report, indices);
            false
        });
    } else {
        let mut rng = SplitMix64(0xDA7E_5EED);
        for _ in 0..REDUCTION_SAMPLES {
            let mut indices: Vec<usize> = (0..len).map(|_| rng.below(n)).collect();
            indices.sort_unstable();
            run_one(&mut report, &indices);
        }
    }
    Ok(report)
}

/// Checks `D(G) >= D(G/H) + D(H) - 1` for every cyclic subgroup `H`
/// of the given group, all three constants by exhaustive search.
pub fn quotient_inequality_suite(
    group: &AbelianGroupSpec,
    limits: &Limits,
) -> Result<CheckReport, Error> {
    suite_guard(group.order(), limits)?;
    let desc = format!("group {:?}", group.factors());
    let mut report = CheckReport {
        label: "quotient-inequality",
        checked: 0,
        qualifying: 0,
        violations: Vec::new(),
    };
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for g in 0..group.order() as usize {
        let generator = group.element_at(g);
        let subgroup = group.subgroup_closure(core::slice::from_ref(&generator))?;
        if seen.contains(&subgroup) {
            continue;
        }
        seen.push(subgroup);
        report.checked += 1;
        let result = quotient_bound_check(group, core::slice::from_ref(&generator), limits)?;
        if !result.holds {
            report.violation(
                &desc,
                format!(
                    "D(G)={} < D(G/H)={} + D(H)={} - 1 for H = <{generator:?}>",
                    result.d_group, result.d_quotient, result.d_subgroup
                ),
            );
        }
    }
    report.qualifying = report.checked;
    Ok(report)
}

/// The retracted exact-gap claim `D(S_R) = D(U(S_R)) + P_2`, kept as a
/// falsifiable check: it holds on some rings and fails on Z_4.
///
/// Returns the full report plus whether the claim held.
pub fn exact_gap_claim(ring: &RingSpec, limits: &Limits) -> Result<(DavenportReport, bool), Error> {
    let report = davenport_semigroup(ring, limits)?;
    let holds = report.exact && report.gap() == i64::from(report.p2);
    Ok((report, holds))
}
