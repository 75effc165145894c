//! The machine-readable report formats: the single-ring JSON document
//! and the scan CSV row.

use davenport_core::ring::RingSpec;
use davenport_core::search::DavenportReport;
use serde::{Deserialize, Serialize};

/// Single-ring JSON schema.  Field order is part of the format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub moduli: Vec<u64>,
    #[serde(rename = "D_semigroup")]
    pub d_semigroup: u32,
    #[serde(rename = "D_units")]
    pub d_units: u32,
    #[serde(rename = "P2")]
    pub p2: u32,
    pub delta: u32,
    pub conj_bound: u32,
    pub gap: i64,
    pub bounds_ok: bool,
    pub conjecture_ok: bool,
    /// Witness terms in one-based tuple form (residue 0 shown as `n_i`).
    pub witness: Vec<Vec<u64>>,
    pub stats: JsonStats,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonStats {
    pub nodes: u64,
    pub millis: u64,
}

impl JsonReport {
    pub fn from_report(report: &DavenportReport) -> Self {
        let ring = RingSpec::new(report.moduli.clone()).expect("report moduli are valid");
        JsonReport {
            moduli: report.moduli.clone(),
            d_semigroup: report.d_semigroup,
            d_units: report.d_units,
            p2: report.p2,
            delta: report.delta,
            conj_bound: report.conj_bound,
            gap: report.gap(),
            bounds_ok: report.bounds_ok(),
            conjecture_ok: report.conjecture_ok,
            witness: report.witness.terms().iter().map(|t| ring.theta(t)).collect(),
            stats: JsonStats { nodes: report.nodes, millis: report.millis },
            exact: report.exact,
        }
    }

    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub const CSV_HEADER: [&str; 10] = [
    "moduli", "D", "DU", "P2", "delta", "gap", "conj_bound", "bounds_ok", "conj_ok", "exact",
];

/// One scan row in the pinned column order.
pub fn csv_record(report: &JsonReport) -> [String; 10] {
    [
        moduli_string(&report.moduli),
        report.d_semigroup.to_string(),
        report.d_units.to_string(),
        report.p2.to_string(),
        report.delta.to_string(),
        report.gap.to_string(),
        report.conj_bound.to_string(),
        report.bounds_ok.to_string(),
        report.conjecture_ok.to_string(),
        report.exact.to_string(),
    ]
}

/// Canonical textual form of a moduli list: sorted ascending, joined
/// with commas.  Doubles as the cache key.
pub fn moduli_string(moduli: &[u64]) -> String {
    let mut sorted = moduli.to_vec();
    sorted.sort_unstable();
    sorted
        .iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
