//! Ring-family scan campaigns: enumerate canonical moduli tuples,
//! compute (or recall) each report, and emit the CSV table.

use std::io;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use davenport_core::ring::RingSpec;
use davenport_core::search::davenport_semigroup;
use davenport_core::{Error, Limits};

use crate::cache::Cache;
use crate::report::{csv_record, moduli_string, JsonReport, CSV_HEADER};

#[derive(Clone, Debug)]
pub struct ScanConfig {
    /// Largest semigroup order `∏ n_i` scanned.
    pub max_order: u64,
    pub max_rank: u32,
    /// Keep only rings whose moduli are all even.
    pub even_only: bool,
    /// Keep only rings whose moduli are all odd.
    pub odd_only: bool,
    /// Keep only rings whose moduli are prime powers.
    pub prime_powers_only: bool,
    pub node_budget: u64,
    pub workers: usize,
}

/// All moduli tuples `2 <= n_1 <= … <= n_k` with `k <= max_rank` and
/// `∏ n_i <= max_order`, rank by rank, lexicographic within a rank.
pub fn enumerate_rings(config: &ScanConfig) -> Vec<Vec<u64>> {
    fn extend(
        config: &ScanConfig,
        prefix: &mut Vec<u64>,
        min: u64,
        room: u64,
        out: &mut Vec<Vec<u64>>,
        want_rank: usize,
    ) {
        if prefix.len() == want_rank {
            out.push(prefix.clone());
            return;
        }
        for n in min..=room {
            if keep_modulus(config, n) {
                prefix.push(n);
                extend(config, prefix, n, room / n, out, want_rank);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    for rank in 1..=config.max_rank as usize {
        extend(config, &mut Vec::new(), 2, config.max_order, &mut out, rank);
    }
    out
}

fn keep_modulus(config: &ScanConfig, n: u64) -> bool {
    if config.even_only && n % 2 != 0 {
        return false;
    }
    if config.odd_only && n % 2 == 0 {
        return false;
    }
    if config.prime_powers_only && davenport_core::arith::factorize(n).len() != 1 {
        return false;
    }
    true
}

pub struct ScanOutput {
    /// One report per enumerated ring, in enumeration order.
    pub rows: Vec<JsonReport>,
    pub cache_hits: usize,
    /// Rendered falsification events from any ring (bound violations,
    /// closure failures); empty on a healthy corpus.
    pub falsifications: Vec<String>,
}

impl ScanOutput {
    pub fn bounds_violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.bounds_ok).count()
    }

    pub fn conjecture_violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.conjecture_ok).count()
    }

    pub fn inexact(&self) -> usize {
        self.rows.iter().filter(|r| !r.exact).count()
    }
}

/// Computes every enumerated ring, reusing cache entries where present;
/// ring-level work is spread over the configured workers and collected
/// back in enumeration order.
pub fn campaign(config: &ScanConfig, cache: Option<&mut Cache>) -> Result<ScanOutput, Error> {
    let limits = Limits { node_budget: config.node_budget, ..Limits::default() };
    if config.max_order > limits.max_enumeration {
        return Err(Error::limit(format!(
            "max order {} exceeds the enumeration cap {}",
            config.max_order, limits.max_enumeration
        )));
    }
    let rings = enumerate_rings(config);
    let mut rows: Vec<Option<JsonReport>> = vec![None; rings.len()];
    let mut fresh: Vec<usize> = Vec::new();
    let mut cache_hits = 0;

    if let Some(cache) = cache.as_deref() {
        for (i, moduli) in rings.iter().enumerate() {
            if let Some(entry) = cache.get(&moduli_string(moduli)) {
                rows[i] = Some(entry.report.clone());
                cache_hits += 1;
            }
        }
    }
    for (i, row) in rows.iter().enumerate() {
        if row.is_none() {
            fresh.push(i);
        }
    }

    let computed: Vec<(usize, Result<(JsonReport, Vec<String>), Error>)> = {
        let cursor = AtomicUsize::new(0);
        let (tx, rx) = mpsc::channel();
        std::thread::scope(|scope| {
            for _ in 0..config.workers.max(1).min(fresh.len().max(1)) {
                let tx = tx.clone();
                let cursor = &cursor;
                let fresh = &fresh;
                let rings = &rings;
                let limits = &limits;
                scope.spawn(move || loop {
                    let slot = cursor.fetch_add(1, Ordering::Relaxed);
                    if slot >= fresh.len() {
                        break;
                    }
                    let i = fresh[slot];
                    let result = compute_one(&rings[i], limits);
                    if tx.send((i, result)).is_err() {
                        break;
                    }
                });
            }
        });
        drop(tx);
        rx.into_iter().collect()
    };
    let mut falsifications: Vec<(usize, String)> = Vec::new();
    for (i, result) in computed {
        let (report, notes) = result?;
        rows[i] = Some(report);
        falsifications.extend(notes.into_iter().map(|n| (i, n)));
    }
    falsifications.sort();

    let rows: Vec<JsonReport> = rows.into_iter().map(|r| r.expect("all rings ran")).collect();
    if let Some(cache) = cache {
        for (row, moduli) in rows.iter().zip(&rings) {
            let key = moduli_string(moduli);
            if row.exact && cache.get(&key).is_none() {
                cache.put(key, row.clone());
            }
        }
    }
    Ok(ScanOutput {
        rows,
        cache_hits,
        falsifications: falsifications.into_iter().map(|(_, n)| n).collect(),
    })
}

fn compute_one(moduli: &[u64], limits: &Limits) -> Result<(JsonReport, Vec<String>), Error> {
    let ring = RingSpec::new(moduli.to_vec())?;
    let started = Instant::now();
    let mut report = davenport_semigroup(&ring, limits)?;
    report.millis = started.elapsed().as_millis() as u64;
    let notes = report.falsifications.iter().map(|f| f.to_string()).collect();
    Ok((JsonReport::from_report(&report), notes))
}

pub fn write_csv<W: io::Write>(rows: &[JsonReport], sink: W) -> io::Result<()> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(CSV_HEADER)?;
    for row in rows {
        writer.write_record(csv_record(row))?;
    }
    writer.flush()
}
