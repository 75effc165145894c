//! Command-line workbench around `davenport-core`: single-ring reports,
//! ring-family scans, verification campaigns, witness emission, JSON and
//! CSV output, and a persistent result cache.

pub mod cache;
pub mod cli;
pub mod exec;
pub mod report;
pub mod scan;

/// Process exit codes, stable across commands.
pub mod exit {
    /// Everything ran and every checked claim held.
    pub const OK: i32 = 0;
    /// A certified claim was falsified (counterexample serialized).
    pub const FALSIFIED: i32 = 1;
    /// Usage error (also produced by argument parsing).
    pub const USAGE: i32 = 2;
    /// Node budget exhausted; results are partial and marked inexact.
    pub const BUDGET: i32 = 3;
    /// File or cache I/O failure.
    pub const IO: i32 = 4;
}
