//! Exact computation of Davenport constants by pruned exhaustive
//! search.
//!
//! The search walks canonically non-decreasing sequences depth first and
//! extends only irreducible prefixes.  Every sub-multiset of an
//! irreducible sequence is irreducible, so this visits every irreducible
//! multiset exactly once; the engine can re-certify that closure at
//! every visited node by maintaining the reducibility state of each
//! drop-one sub-multiset alongside the main state.
//!
//! Results are deterministic regardless of how branches are scheduled:
//! the reported witness is the lexicographically least among the
//! maximal-length witnesses, node counts are summed per branch, and
//! merging is done in branch order.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Falsification};
use crate::group::AbelianGroupSpec;
use crate::monoid::FiniteMonoid;
use crate::ring::RingSpec;
use crate::seq::{Sequence, SubsumState};
use crate::Limits;

/// Full multiplication tables are precomputed below this order.
const TABLE_MAX_ORDER: usize = 512;

/// How many node ticks a branch accumulates before syncing with the
/// shared budget counter.
const FLUSH_INTERVAL: u64 = 1024;

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    /// Longest sequence length explored (inclusive).
    pub cap: usize,
    /// Extension attempts allowed across all branches.
    pub node_budget: u64,
    /// Maintain and verify drop-one reducibility states.
    pub check_closure: bool,
}

/// A sequence found irreducible whose drop-one sub-multiset was not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureViolation {
    /// Element indices of the irreducible sequence.
    pub sequence: Vec<usize>,
    /// Element index whose removal produced a reducible sub-multiset.
    pub dropped: usize,
}

/// Result of a search (one branch or the whole problem).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Longest irreducible length found.
    pub length: usize,
    /// Lexicographically least witness of that length (element indices,
    /// non-decreasing).
    pub witness: Vec<usize>,
    /// Extension attempts actually made.
    pub nodes: u64,
    /// False when the node budget aborted the walk; `length` is then
    /// only a lower bound.
    pub exact: bool,
    /// An irreducible sequence of length exactly `cap` was found, so the
    /// true maximum may exceed the cap.
    pub cap_limited: bool,
    /// Downward-closure failures observed (always empty unless the
    /// engine itself is broken).
    pub closure_violations: Vec<ClosureViolation>,
}

impl SearchOutcome {
    fn empty() -> Self {
        SearchOutcome {
            length: 0,
            witness: Vec::new(),
            nodes: 0,
            exact: true,
            cap_limited: false,
            closure_violations: Vec::new(),
        }
    }

    /// Folds another branch outcome in; call in ascending branch order.
    pub fn merge(&mut self, other: SearchOutcome) {
        if other.length > self.length
            || (other.length == self.length && other.witness < self.witness)
        {
            self.length = other.length;
            self.witness = other.witness;
        }
        self.nodes += other.nodes;
        self.exact &= other.exact;
        self.cap_limited |= other.cap_limited;
        self.closure_violations.extend(other.closure_violations);
    }
}

/// A prepared longest-irreducible-sequence search over a ground set
/// inside a finite commutative monoid.
pub struct SearchProblem<'a, M: FiniteMonoid> {
    monoid: &'a M,
    ground: Vec<usize>,
    config: SearchConfig,
    table: Option<Vec<u32>>,
}

impl<M: FiniteMonoid> FiniteMonoid for SearchProblem<'_, M> {
    fn order(&self) -> usize {
        self.monoid.order()
    }

    fn identity(&self) -> usize {
        self.monoid.identity()
    }

    fn combine(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.monoid.order() + b] as usize,
            None => self.monoid.combine(a, b),
        }
    }
}

struct NodeCounter<'a> {
    shared: &'a AtomicU64,
    budget: u64,
    local: u64,
    since_flush: u64,
    exhausted: bool,
}

impl<'a> NodeCounter<'a> {
    fn new(shared: &'a AtomicU64, budget: u64) -> Self {
        NodeCounter { shared, budget, local: 0, since_flush: 0, exhausted: false }
    }

    /// Counts one extension attempt; false means the budget ran out.
    fn tick(&mut self) -> bool {
        self.local += 1;
        self.since_flush += 1;
        if self.local > self.budget {
            self.exhausted = true;
        } else if self.since_flush >= FLUSH_INTERVAL {
            let seen = self.shared.fetch_add(self.since_flush, Ordering::Relaxed)
                + self.since_flush;
            self.since_flush = 0;
            if seen > self.budget {
                self.exhausted = true;
            }
        }
        !self.exhausted
    }

    fn finish(&mut self) {
        self.shared.fetch_add(self.since_flush, Ordering::Relaxed);
        self.since_flush = 0;
    }
}

impl<'a, M: FiniteMonoid> SearchProblem<'a, M> {
    /// `ground` is deduplicated and sorted; every index must lie in the
    /// monoid's index space.
    pub fn new(monoid: &'a M, mut ground: Vec<usize>, config: SearchConfig) -> Self {
        ground.sort_unstable();
        ground.dedup();
        debug_assert!(ground.iter().all(|&g| g < monoid.order()));
        let order = monoid.order();
        let table = (order <= TABLE_MAX_ORDER).then(|| {
            let mut t = Vec::with_capacity(order * order);
            for a in 0..order {
                for b in 0..order {
                    t.push(monoid.combine(a, b) as u32);
                }
            }
            t
        });
        SearchProblem { monoid, ground, config, table }
    }

    /// One branch per choice of the first (least) element.
    pub fn branch_count(&self) -> usize {
        self.ground.len()
    }

    /// Baseline outcome of the empty sequence, the seed for merging.
    pub fn empty_outcome(&self) -> SearchOutcome {
        SearchOutcome::empty()
    }

    /// Explores every canonical sequence whose first element is
    /// `ground[branch]`.  The shared counter gates the node budget
    /// across concurrently running branches.
    pub fn run_branch(&self, branch: usize, shared: &AtomicU64) -> SearchOutcome {
        let mut outcome = SearchOutcome::empty();
        let mut counter = NodeCounter::new(shared, self.config.node_budget);
        if self.config.cap >= 1 {
            let root = SubsumState::empty(self);
            let mut seq = Vec::with_capacity(self.config.cap);
            let drops: Vec<(usize, SubsumState)> = Vec::new();
            self.dfs(&root, &drops, branch, &mut seq, &mut counter, &mut outcome);
        }
        counter.finish();
        outcome.nodes = counter.local;
        outcome.exact = !counter.exhausted;
        outcome
    }

    /// Serial driver: all branches in order, merged into one outcome.
    pub fn run_all(&self) -> SearchOutcome {
        let shared = AtomicU64::new(0);
        let mut acc = self.empty_outcome();
        for branch in 0..self.branch_count() {
            acc.merge(self.run_branch(branch, &shared));
        }
        acc
    }

    fn dfs(
        &self,
        state: &SubsumState,
        drops: &[(usize, SubsumState)],
        start: usize,
        seq: &mut Vec<usize>,
        counter: &mut NodeCounter<'_>,
        outcome: &mut SearchOutcome,
    ) {
        for pos in start..self.ground.len() {
            if !counter.tick() {
                return;
            }
            let a = self.ground[pos];
            let child = state.extend(self, a);
            if child.is_reducible() {
                continue;
            }
            seq.push(a);
            let child_drops = if self.config.check_closure {
                let mut d: Vec<(usize, SubsumState)> = Vec::with_capacity(drops.len() + 1);
                for (x, dstate) in drops {
                    if *x != a {
                        d.push((*x, dstate.extend(self, a)));
                    }
                }
                d.push((a, state.clone()));
                for (x, dstate) in &d {
                    if dstate.is_reducible() {
                        outcome.closure_violations.push(ClosureViolation {
                            sequence: seq.clone(),
                            dropped: *x,
                        });
                    }
                }
                d
            } else {
                Vec::new()
            };
            if seq.len() > outcome.length
                || (seq.len() == outcome.length && *seq < outcome.witness)
            {
                outcome.length = seq.len();
                outcome.witness = seq.clone();
            }
            if seq.len() < self.config.cap {
                self.dfs(&child, &child_drops, pos, seq, counter, outcome);
            } else {
                outcome.cap_limited = true;
            }
            seq.pop();
            if counter.exhausted {
                return;
            }
        }
    }
}

/// Plugs a scheduling strategy into the ring-level Davenport
/// computations; the serial strategy lives here, thread pools in the
/// companion crate.
pub trait Executor {
    fn run(&self, problem: &SearchProblem<'_, RingSpec>) -> SearchOutcome;
}

pub struct SerialExecutor;

impl Executor for SerialExecutor {
    fn run(&self, problem: &SearchProblem<'_, RingSpec>) -> SearchOutcome {
        problem.run_all()
    }
}

/// Everything the workbench reports about one ring.
#[derive(Clone, Debug)]
pub struct DavenportReport {
    pub moduli: Vec<u64>,
    /// `D(S_R)`; when `exact` is false this is only a lower bound.
    pub d_semigroup: u32,
    /// `D(U(S_R))`.
    pub d_units: u32,
    pub p2: u32,
    pub delta: u32,
    pub conj_bound: u32,
    /// A maximal-length irreducible sequence over `S_R` (the
    /// lexicographically least one).
    pub witness: Sequence,
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub conjecture_ok: bool,
    pub exact: bool,
    pub nodes: u64,
    /// Wall-clock milliseconds, filled in by callers that can measure
    /// time; zero inside this crate.
    pub millis: u64,
    pub falsifications: Vec<Falsification>,
}

impl DavenportReport {
    /// `d(S_R) = D(S_R) - 1`, the longest irreducible length.
    pub fn small_d(&self) -> u32 {
        self.d_semigroup - 1
    }

    pub fn gap(&self) -> i64 {
        i64::from(self.d_semigroup) - i64::from(self.d_units)
    }

    pub fn bounds_ok(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

fn check_search_feasible<M: FiniteMonoid>(monoid: &M, limits: &Limits) -> Result<(), Error> {
    if monoid.order() as u64 > limits.max_enumeration {
        return Err(Error::limit(alloc::format!(
            "order {} exceeds enumeration cap {}",
            monoid.order(),
            limits.max_enumeration
        )));
    }
    Ok(())
}

/// Longest irreducible sequence over an arbitrary ground set of ring
/// elements, up to length `cap`.
///
/// Exact unless the outcome says otherwise: a `cap_limited` flag means
/// an irreducible sequence of the cap length exists, and `exact: false`
/// means the node budget aborted the walk and the result is only a
/// lower bound.
pub fn longest_irreducible(
    ring: &RingSpec,
    ground: &[crate::ring::Element],
    cap: usize,
    limits: &Limits,
) -> Result<(SearchOutcome, Sequence), Error> {
    if cap == 0 {
        return Err(Error::invalid("cap must be at least 1".to_string()));
    }
    check_search_feasible(ring, limits)?;
    let indices: Vec<usize> = ground.iter().map(|e| ring.index_of(e)).collect();
    let problem = SearchProblem::new(
        ring,
        indices,
        SearchConfig { cap, node_budget: limits.node_budget, check_closure: true },
    );
    let outcome = problem.run_all();
    let witness = Sequence::from_indices(ring, &outcome.witness);
    Ok((outcome, witness))
}

/// `D(S_R)` with the full report: unit-group constant, bound checks,
/// witness, and search statistics.
///
/// The semigroup search is capped by the certified upper bound
/// `D(U(S_R)) + δ`; hitting the cap would falsify that bound and is
/// reported loudly, never clamped.
pub fn davenport_semigroup(ring: &RingSpec, limits: &Limits) -> Result<DavenportReport, Error> {
    davenport_semigroup_with(ring, limits, &SerialExecutor)
}

/// Same as [`davenport_semigroup`] with a caller-chosen executor.
pub fn davenport_semigroup_with(
    ring: &RingSpec,
    limits: &Limits,
    exec: &dyn Executor,
) -> Result<DavenportReport, Error> {
    check_search_feasible(ring, limits)?;
    let inv = ring.invariants();
    let mut falsifications = Vec::new();

    let unit_indices = ring.unit_indices(limits)?;
    let unit_cap = unit_indices.len().max(1);
    let unit_problem = SearchProblem::new(
        ring,
        unit_indices,
        SearchConfig { cap: unit_cap, node_budget: limits.node_budget, check_closure: true },
    );
    let out_units = exec.run(&unit_problem);
    let d_units = out_units.length as u32 + 1;
    if out_units.cap_limited {
        falsifications.push(Falsification {
            claim: "unit-search-cap".to_string(),
            context: alloc::format!("ring {:?}", ring.moduli()),
            counterexample: alloc::format!(
                "irreducible unit sequence of length {} = |U|",
                out_units.length
            ),
        });
    }

    let cap = d_units as usize + inv.delta as usize;
    let full_problem = SearchProblem::new(
        ring,
        (0..ring.order()).collect(),
        SearchConfig { cap, node_budget: limits.node_budget, check_closure: true },
    );
    let out_full = exec.run(&full_problem);
    let d_semigroup = out_full.length as u32 + 1;
    if out_full.cap_limited && out_units.exact {
        falsifications.push(Falsification {
            claim: "upper-bound-cap".to_string(),
            context: alloc::format!("ring {:?}", ring.moduli()),
            counterexample: alloc::format!(
                "irreducible sequence of length {} reaches D(U)+delta = {}",
                out_full.length,
                cap
            ),
        });
    }
    for v in out_units
        .closure_violations
        .iter()
        .chain(&out_full.closure_violations)
    {
        falsifications.push(Falsification {
            claim: "downward-closure".to_string(),
            context: alloc::format!("ring {:?}", ring.moduli()),
            counterexample: alloc::format!("{v:?}"),
        });
    }

    let exact = out_units.exact && out_full.exact && !out_full.cap_limited;
    // A violated bound is only claimed when the relevant search side is
    // complete; partial runs stay silent rather than spuriously accusing.
    let lower_ok = !(out_full.exact && !out_full.cap_limited
        && d_semigroup < d_units + inv.p2);
    let upper_ok = !(out_units.exact && d_semigroup > d_units + inv.delta);
    if !lower_ok {
        falsifications.push(Falsification {
            claim: "lower-bound".to_string(),
            context: alloc::format!("ring {:?}", ring.moduli()),
            counterexample: alloc::format!(
                "D = {d_semigroup} < D(U) + P2 = {}",
                d_units + inv.p2
            ),
        });
    }
    if !upper_ok {
        falsifications.push(Falsification {
            claim: "upper-bound".to_string(),
            context: alloc::format!("ring {:?}", ring.moduli()),
            counterexample: alloc::format!(
                "D = {d_semigroup} > D(U) + delta = {}",
                d_units + inv.delta
            ),
        });
    }

    let gap = i64::from(d_semigroup) - i64::from(d_units);
    Ok(DavenportReport {
        moduli: ring.moduli().to_vec(),
        d_semigroup,
        d_units,
        p2: inv.p2,
        delta: inv.delta,
        conj_bound: inv.conj_bound,
        witness: Sequence::from_indices(ring, &out_full.witness),
        lower_ok,
        upper_ok,
        conjecture_ok: gap <= i64::from(inv.conj_bound),
        exact,
        nodes: out_units.nodes + out_full.nodes,
        millis: 0,
        falsifications,
    })
}

fn davenport_over<M: FiniteMonoid>(monoid: &M, limits: &Limits) -> Result<u32, Error> {
    davenport_over_ground(monoid, (0..monoid.order()).collect(), limits)
}

fn davenport_over_ground<M: FiniteMonoid>(
    monoid: &M,
    ground: Vec<usize>,
    limits: &Limits,
) -> Result<u32, Error> {
    check_search_feasible(monoid, limits)?;
    let cap = ground.len().max(1);
    let problem = SearchProblem::new(
        monoid,
        ground,
        SearchConfig { cap, node_budget: limits.node_budget, check_closure: false },
    );
    let outcome = problem.run_all();
    if !outcome.exact {
        return Err(Error::limit(alloc::format!(
            "node budget {} exhausted", limits.node_budget
        )));
    }
    if outcome.cap_limited {
        return Err(Error::Falsified(Falsification {
            claim: "zero-sum-free-length".to_string(),
            context: "group search".to_string(),
            counterexample: alloc::format!(
                "irreducible sequence of length {} in a group of that order",
                outcome.length
            ),
        }));
    }
    Ok(outcome.length as u32 + 1)
}

/// Exact `D(G)` of an abstract finite abelian group, by the same
/// engine over the group's index space.
pub fn davenport_group(group: &AbelianGroupSpec, limits: &Limits) -> Result<u32, Error> {
    davenport_over(group, limits)
}

/// The classical lower bound `1 + Σ (d_j - 1)` for a group in covering
/// invariant-factor form `d_1 | d_2 | … | d_k`.
///
/// Used only as a cross-check seed, never as ground truth.
pub fn davenport_lower_formula(group: &AbelianGroupSpec) -> Result<u32, Error> {
    if !group.is_invariant_chain() {
        return Err(Error::invalid(
            "factors are not a divisibility chain; convert with invariant_factors first"
                .to_string(),
        ));
    }
    Ok(1 + group.factors().iter().map(|&d| d as u32 - 1).sum::<u32>())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientBoundReport {
    pub d_group: u32,
    pub d_subgroup: u32,
    pub d_quotient: u32,
    /// `D(G) >= D(G/H) + D(H) - 1`.
    pub holds: bool,
}

/// Brute-force check of the quotient inequality
/// `D(G) >= D(G/H) + D(H) - 1` for the subgroup generated by the given
/// tuples; the quotient is realized by a coset table.
pub fn quotient_bound_check(
    group: &AbelianGroupSpec,
    generators: &[Vec<u64>],
    limits: &Limits,
) -> Result<QuotientBoundReport, Error> {
    let subgroup = group.subgroup_closure(generators)?;
    let d_group = davenport_over(group, limits)?;
    let d_subgroup = davenport_over_ground(group, subgroup.clone(), limits)?;
    let quotient = group.quotient(&subgroup)?;
    let d_quotient = davenport_over(&quotient, limits)?;
    Ok(QuotientBoundReport {
        d_group,
        d_subgroup,
        d_quotient,
        holds: d_group >= d_quotient + d_subgroup - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ring(moduli: &[u64]) -> RingSpec {
        RingSpec::new(moduli.to_vec()).unwrap()
    }

    #[test]
    fn longest_irreducible_examples() {
        let limits = Limits::default();

        let z4 = ring(&[4]);
        let ground = z4.elements(&limits).unwrap();
        let (out, witness) = longest_irreducible(&z4, &ground, 4, &limits).unwrap();
        assert_eq!(out.length, 2);
        assert!(out.exact && !out.cap_limited);
        assert_eq!(witness, Sequence::new(&z4, vec![
            z4.element(vec![2]).unwrap(),
            z4.element(vec![2]).unwrap(),
        ]).unwrap());

        let z8 = ring(&[8]);
        let ground = z8.elements(&limits).unwrap();
        let (out, witness) = longest_irreducible(&z8, &ground, 5, &limits).unwrap();
        assert_eq!(out.length, 3);
        assert_eq!(
            witness.terms().iter().map(|e| e.residues()[0]).collect::<Vec<_>>(),
            vec![2, 2, 2]
        );

        let z6 = ring(&[6]);
        let units = z6.units(&limits).unwrap();
        let (out, witness) = longest_irreducible(&z6, &units, 6, &limits).unwrap();
        assert_eq!(out.length, 1);
        assert_eq!(witness.terms()[0].residues(), &[5]);
    }

    #[test]
    fn cap_flag_reports_truncation() {
        let limits = Limits::default();
        let z9 = ring(&[9]);
        let ground = z9.elements(&limits).unwrap();
        // d(S_9) = 5, so a cap of 2 is hit.
        let (out, _) = longest_irreducible(&z9, &ground, 2, &limits).unwrap();
        assert_eq!(out.length, 2);
        assert!(out.cap_limited);
    }

    #[test]
    fn budget_abort_is_partial_and_inexact() {
        let z9 = ring(&[9]);
        let limits = Limits { node_budget: 1, ..Limits::default() };
        let ground = z9.elements(&limits).unwrap();
        let (out, _) = longest_irreducible(&z9, &ground, 8, &limits).unwrap();
        assert!(!out.exact);
    }

    #[test]
    fn davenport_group_examples() {
        let limits = Limits::default();
        let g = AbelianGroupSpec::new(vec![2]).unwrap();
        assert_eq!(davenport_group(&g, &limits).unwrap(), 2);
        let g = AbelianGroupSpec::new(vec![2, 2]).unwrap();
        assert_eq!(davenport_group(&g, &limits).unwrap(), 3);
        let g = AbelianGroupSpec::new(vec![6]).unwrap();
        assert_eq!(davenport_group(&g, &limits).unwrap(), 6);
        assert_eq!(davenport_group(&AbelianGroupSpec::trivial(), &limits).unwrap(), 1);
    }

    #[test]
    fn lower_formula() {
        let g = AbelianGroupSpec::new(vec![2, 2]).unwrap();
        assert_eq!(davenport_lower_formula(&g).unwrap(), 3);
        let g = AbelianGroupSpec::new(vec![6]).unwrap();
        assert_eq!(davenport_lower_formula(&g).unwrap(), 6);
        let g = AbelianGroupSpec::new(vec![2, 4]).unwrap();
        assert_eq!(davenport_lower_formula(&g).unwrap(), 5);
        let g = AbelianGroupSpec::new(vec![2, 3]).unwrap();
        assert!(davenport_lower_formula(&g).is_err());
    }

    #[test]
    fn quotient_bound_examples() {
        let limits = Limits::default();
        let g = AbelianGroupSpec::new(vec![2, 2]).unwrap();
        let report = quotient_bound_check(&g, &[vec![1, 0]], &limits).unwrap();
        assert_eq!(
            (report.d_group, report.d_subgroup, report.d_quotient, report.holds),
            (3, 2, 2, true)
        );

        let g = AbelianGroupSpec::new(vec![4]).unwrap();
        let report = quotient_bound_check(&g, &[vec![2]], &limits).unwrap();
        assert_eq!(
            (report.d_group, report.d_subgroup, report.d_quotient, report.holds),
            (4, 2, 2, true)
        );

        let g = AbelianGroupSpec::new(vec![2]).unwrap();
        let report = quotient_bound_check(&g, &[], &limits).unwrap();
        assert_eq!(
            (report.d_group, report.d_subgroup, report.d_quotient, report.holds),
            (2, 1, 2, true)
        );

        assert!(quotient_bound_check(&g, &[vec![7]], &limits).is_err());
    }

    #[test]
    fn semigroup_reports() {
        let limits = Limits::default();
        for (moduli, d, du) in [
            (&[4u64][..], 3, 2),
            (&[8], 4, 3),
            (&[6], 3, 2),
            (&[2], 2, 1),
        ] {
            let report = davenport_semigroup(&ring(moduli), &limits).unwrap();
            assert_eq!(report.d_semigroup, d, "ring {moduli:?}");
            assert_eq!(report.d_units, du, "ring {moduli:?}");
            assert!(report.exact);
            assert!(report.bounds_ok());
            assert!(report.falsifications.is_empty());
            assert_eq!(report.witness.len() + 1, report.d_semigroup as usize);
            assert_eq!(report.small_d(), report.d_semigroup - 1);
        }
    }

    #[test]
    fn merge_is_order_canonical() {
        let limits = Limits::default();
        let z12 = ring(&[12]);
        let problem = SearchProblem::new(
            &z12,
            (0..z12.order()).collect(),
            SearchConfig { cap: 4, node_budget: limits.node_budget, check_closure: true },
        );
        let serial = problem.run_all();

        // Any schedule, merged in branch order, is identical.
        let shared = AtomicU64::new(0);
        let mut outcomes: Vec<SearchOutcome> = (0..problem.branch_count())
            .map(|b| problem.run_branch(b, &shared))
            .collect();
        outcomes.reverse();
        let mut acc = problem.empty_outcome();
        for out in outcomes.into_iter().rev() {
            acc.merge(out);
        }
        assert_eq!(acc, serial);
    }
}
