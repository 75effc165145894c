//! Deterministic worker-pool executor for the branch-parallel search.
//!
//! Workers pull branch indices from a shared cursor; outcomes are
//! collected per branch and merged in branch order, so the result (and
//! every reported statistic except wall time) is identical for any
//! worker count.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::mpsc;

use davenport_core::ring::RingSpec;
use davenport_core::search::{Executor, SearchOutcome, SearchProblem};

pub struct ThreadedExecutor {
    pub workers: usize,
}

impl Executor for ThreadedExecutor {
    fn run(&self, problem: &SearchProblem<'_, RingSpec>) -> SearchOutcome {
        let branches = problem.branch_count();
        if self.workers <= 1 || branches <= 1 {
            return problem.run_all();
        }
        let shared_nodes = AtomicU64::new(0);
        let cursor = AtomicUsize::new(0);
        let (tx, rx) = mpsc::channel::<(usize, SearchOutcome)>();
        std::thread::scope(|scope| {
            for _ in 0..self.workers.min(branches) {
                let tx = tx.clone();
                let shared_nodes = &shared_nodes;
                let cursor = &cursor;
                scope.spawn(move || loop {
                    let branch = cursor.fetch_add(1, Ordering::Relaxed);
                    if branch >= branches {
                        break;
                    }
                    let outcome = problem.run_branch(branch, shared_nodes);
                    if tx.send((branch, outcome)).is_err() {
                        break;
                    }
                });
            }
        });
        drop(tx);
        let mut slots: Vec<Option<SearchOutcome>> = (0..branches).map(|_| None).collect();
        for (branch, outcome) in rx {
            slots[branch] = Some(outcome);
        }
        let mut acc = problem.empty_outcome();
        for slot in slots {
            acc.merge(slot.expect("every branch ran"));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use davenport_core::search::{davenport_semigroup_with, SerialExecutor};
    use davenport_core::Limits;

    #[test]
    fn worker_count_does_not_change_reports() {
        let limits = Limits::default();
        for moduli in [vec![12u64], vec![8, 2], vec![9]] {
            let ring = RingSpec::new(moduli).unwrap();
            let serial = davenport_semigroup_with(&ring, &limits, &SerialExecutor).unwrap();
            for workers in [2, 3, 8] {
                let exec = ThreadedExecutor { workers };
                let parallel = davenport_semigroup_with(&ring, &limits, &exec).unwrap();
                assert_eq!(parallel.d_semigroup, serial.d_semigroup);
                assert_eq!(parallel.d_units, serial.d_units);
                assert_eq!(parallel.witness, serial.witness);
                assert_eq!(parallel.nodes, serial.nodes);
                assert_eq!(parallel.exact, serial.exact);
            }
        }
    }
}
