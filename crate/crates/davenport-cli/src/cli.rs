//! Argument parsing and command dispatch.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use davenport_core::checks::{
    exact_gap_claim, green_suite, quotient_inequality_suite, reduction_suite,
    stabilizer_growth_suite, CheckReport,
};
use davenport_core::construct::{lower_bound_witness, tight_family_witness};
use davenport_core::group::AbelianGroupSpec;
use davenport_core::ring::RingSpec;
use davenport_core::search::{davenport_semigroup_with, longest_irreducible};
use davenport_core::seq::{is_reducible, sigma, Sequence};
use davenport_core::{Error, Limits};

use crate::cache::{self, Cache};
use crate::exec::ThreadedExecutor;
use crate::exit;
use crate::report::{moduli_string, JsonReport};
use crate::scan::{self, ScanConfig};

#[derive(Parser)]
#[command(
    name = "davenport",
    version,
    about = "Exact Davenport constants of the multiplicative semigroup of Z_{n1} + ... + Z_{nr}",
    after_help = "Exit codes: 0 all checks passed, 1 a certified claim was falsified, \
                  2 usage error, 3 node budget or resource limit, 4 I/O failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Debug)]
struct Moduli(Vec<u64>);

fn parse_moduli(text: &str) -> Result<Moduli, String> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let n: u64 = part
            .trim()
            .parse()
            .map_err(|_| format!("`{part}` is not a positive integer"))?;
        if n < 2 {
            return Err(format!("modulus {n} is below 2"));
        }
        out.push(n);
    }
    Ok(Moduli(out))
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    /// Quotient inequality D(G) >= D(G/H) + D(H) - 1 over all cyclic H
    /// (here --moduli lists the cyclic factor orders of G)
    Lemma1,
    /// Green-structure characterizations and the separating-unit
    /// construction, exhaustively over all element pairs
    Lemma2,
    /// Stabilizer chains of all H-minimal sequences: ascending
    /// containment and at least t - delta strict growth steps
    #[value(name = "assertionB")]
    AssertionB,
    /// Proof-following reduction of every sequence of length
    /// D(U(S_R)) + delta (sampled when too many)
    Reduce,
    /// The retracted exact-gap claim D(S_R) = D(U(S_R)) + P2; known to
    /// fail on Z_4, kept as a falsifiable regression check
    P2gap,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    /// Tight family Z_8^r1 + Z_4^r2 + Z_2^r3 with its length
    /// 3*r1 + 2*r2 + r3 witness
    Section4,
    /// Engine-found maximal irreducible unit sequence extended by one
    /// doubling tuple per coordinate with 2 || n_i
    Lowerbound,
}

#[derive(Subcommand)]
enum Command {
    /// Compute D(S_R) and D(U(S_R)) for one ring and print the JSON report
    Compute {
        /// Comma-separated moduli, each >= 2; canonicalized to ascending
        /// order (the constants are permutation-invariant)
        #[arg(long, value_parser = parse_moduli)]
        moduli: Moduli,
        /// Also write the JSON report to this file
        #[arg(long)]
        json: Option<PathBuf>,
        /// Search node budget (default 10^8 extension attempts)
        #[arg(long)]
        budget: Option<u64>,
        /// Worker threads for the branch-parallel search
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Cache file (default: $DAVENPORT_CACHE_DIR/davenport-cache.json)
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Compute every ring within the limits and print a CSV table
    Scan {
        /// Largest semigroup order scanned
        #[arg(long)]
        max_order: u64,
        /// Largest number of moduli
        #[arg(long)]
        max_rank: u32,
        /// Also write the CSV table to this file
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
        /// Worker threads (one ring per task)
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Keep only rings whose moduli are all even
        #[arg(long)]
        even_only: bool,
        /// Keep only rings whose moduli are all odd
        #[arg(long)]
        odd_only: bool,
        /// Keep only rings whose moduli are prime powers
        #[arg(long)]
        prime_powers_only: bool,
    },
    /// Run one exhaustive verification suite; nonzero exit on violation
    Verify {
        #[arg(long)]
        lemma: Suite,
        /// Ring moduli (for lemma1: the cyclic factor orders of G)
        #[arg(long, value_parser = parse_moduli)]
        moduli: Moduli,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Emit a certified witness sequence with its verification outcome
    Witness {
        #[arg(long)]
        family: Family,
        /// Number of Z_8 coordinates (family: section4)
        #[arg(long, default_value_t = 0)]
        r1: u32,
        /// Number of Z_4 coordinates (family: section4)
        #[arg(long, default_value_t = 0)]
        r2: u32,
        /// Number of Z_2 coordinates (family: section4)
        #[arg(long, default_value_t = 0)]
        r3: u32,
        /// Ring moduli (family: lowerbound)
        #[arg(long, value_parser = parse_moduli)]
        moduli: Option<Moduli>,
    },
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute { moduli, json, budget, workers, cache } => {
            cmd_compute(moduli.0, json, budget, workers, cache)
        }
        Command::Scan {
            max_order,
            max_rank,
            csv,
            budget,
            workers,
            cache,
            even_only,
            odd_only,
            prime_powers_only,
        } => cmd_scan(
            ScanConfig {
                max_order,
                max_rank,
                even_only,
                odd_only,
                prime_powers_only,
                node_budget: budget.unwrap_or(Limits::default().node_budget),
                workers,
            },
            csv,
            cache,
        ),
        Command::Verify { lemma, moduli, budget } => cmd_verify(lemma, moduli.0, budget),
        Command::Witness { family, r1, r2, r3, moduli } => {
            cmd_witness(family, r1, r2, r3, moduli.map(|m| m.0))
        }
    }
}

fn exit_for(error: &Error) -> i32 {
    match error {
        Error::InvalidInput(_) => exit::USAGE,
        Error::ResourceLimit(_) => exit::BUDGET,
        Error::Falsified(_) => exit::FALSIFIED,
    }
}

fn limits_with(budget: Option<u64>) -> Limits {
    Limits {
        node_budget: budget.unwrap_or(Limits::default().node_budget),
        ..Limits::default()
    }
}

fn open_cache(flag: Option<PathBuf>) -> Result<Option<Cache>, i32> {
    let Some(path) = cache::resolve_path(flag) else {
        return Ok(None);
    };
    match Cache::open(&path) {
        Ok((cache, warning)) => {
            if let Some(w) = warning {
                eprintln!("warning: {w}");
            }
            Ok(Some(cache))
        }
        Err(e) => {
            eprintln!("cache read failed: {e}");
            Err(exit::IO)
        }
    }
}

fn cmd_compute(
    mut moduli: Vec<u64>,
    json: Option<PathBuf>,
    budget: Option<u64>,
    workers: usize,
    cache_flag: Option<PathBuf>,
) -> i32 {
    moduli.sort_unstable();
    let limits = limits_with(budget);
    let mut cache = match open_cache(cache_flag) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let key = moduli_string(&moduli);

    let json_report = match cache.as_ref().and_then(|c| c.get(&key)) {
        Some(entry) => entry.report.clone(),
        None => {
            let ring = match RingSpec::new(moduli) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{e}");
                    return exit::USAGE;
                }
            };
            let exec = ThreadedExecutor { workers: workers.max(1) };
            let started = Instant::now();
            let mut report = match davenport_semigroup_with(&ring, &limits, &exec) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{e}");
                    return exit_for(&e);
                }
            };
            report.millis = started.elapsed().as_millis() as u64;
            for f in &report.falsifications {
                eprintln!("FALSIFICATION: {f}");
            }
            let json_report = JsonReport::from_report(&report);
            if report.exact && report.falsifications.is_empty() {
                if let Some(c) = cache.as_mut() {
                    c.put(key, json_report.clone());
                    if let Err(e) = c.save() {
                        eprintln!("cache write failed: {e}");
                        return exit::IO;
                    }
                }
            }
            json_report
        }
    };

    let text = json_report.to_pretty();
    print!("{text}");
    if let Some(path) = json {
        if let Err(e) = std::fs::write(&path, &text) {
            eprintln!("failed to write {}: {e}", path.display());
            return exit::IO;
        }
    }
    if !json_report.bounds_ok {
        return exit::FALSIFIED;
    }
    if !json_report.exact {
        return exit::BUDGET;
    }
    exit::OK
}

fn cmd_scan(config: ScanConfig, csv: Option<PathBuf>, cache_flag: Option<PathBuf>) -> i32 {
    if config.even_only && config.odd_only {
        eprintln!("--even-only and --odd-only exclude every ring");
        return exit::USAGE;
    }
    let mut cache = match open_cache(cache_flag) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let started = Instant::now();
    let output = match scan::campaign(&config, cache.as_mut()) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{e}");
            return exit_for(&e);
        }
    };
    if let Some(c) = &cache {
        if let Err(e) = c.save() {
            eprintln!("cache write failed: {e}");
            return exit::IO;
        }
    }

    let stdout = std::io::stdout();
    if let Err(e) = scan::write_csv(&output.rows, stdout.lock()) {
        eprintln!("failed to write CSV: {e}");
        return exit::IO;
    }
    if let Some(path) = csv {
        let write = std::fs::File::create(&path)
            .and_then(|f| scan::write_csv(&output.rows, f));
        if let Err(e) = write {
            eprintln!("failed to write {}: {e}", path.display());
            return exit::IO;
        }
    }

    let bounds_violations = output.bounds_violations();
    let conjecture_violations = output.conjecture_violations();
    let inexact = output.inexact();
    eprintln!(
        "scan: {} rings ({} cached) in {} ms; bound violations: {}; conjecture findings: {}; inexact: {}",
        output.rows.len(),
        output.cache_hits,
        started.elapsed().as_millis(),
        bounds_violations,
        conjecture_violations,
        inexact,
    );
    for note in &output.falsifications {
        eprintln!("FALSIFICATION: {note}");
    }
    for row in &output.rows {
        if !row.conjecture_ok {
            eprintln!("finding: conjectured gap bound exceeded on {}", moduli_string(&row.moduli));
        }
    }
    if bounds_violations > 0 || !output.falsifications.is_empty() {
        return exit::FALSIFIED;
    }
    if inexact > 0 {
        return exit::BUDGET;
    }
    exit::OK
}

fn print_check_report(report: &CheckReport, context: &str) -> i32 {
    println!(
        "verify {} on {}: checked={} qualifying={} violations={}",
        report.label,
        context,
        report.checked,
        report.qualifying,
        report.violations.len()
    );
    for v in &report.violations {
        println!("counterexample: {v}");
    }
    if report.passed() {
        println!("result: PASS");
        exit::OK
    } else {
        println!("result: FAIL");
        exit::FALSIFIED
    }
}

fn cmd_verify(suite: Suite, moduli: Vec<u64>, budget: Option<u64>) -> i32 {
    let limits = limits_with(budget);
    let context = moduli_string(&moduli);
    let result = match suite {
        Suite::Lemma1 => {
            let group = match AbelianGroupSpec::new(moduli) {
                Ok(g) => g,
                Err(e) => {
                    eprintln!("{e}");
                    return exit::USAGE;
                }
            };
            quotient_inequality_suite(&group, &limits)
        }
        Suite::Lemma2 | Suite::AssertionB | Suite::Reduce => {
            let ring = match RingSpec::new(moduli) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{e}");
                    return exit::USAGE;
                }
            };
            match suite {
                Suite::Lemma2 => green_suite(&ring, &limits),
                Suite::AssertionB => stabilizer_growth_suite(&ring, &limits),
                _ => reduction_suite(&ring, &limits),
            }
        }
        Suite::P2gap => {
            let ring = match RingSpec::new(moduli) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{e}");
                    return exit::USAGE;
                }
            };
            return match exact_gap_claim(&ring, &limits) {
                Ok((report, holds)) => {
                    println!(
                        "verify exact-gap-claim on {context}: D={} D(U)={} gap={} P2={}",
                        report.d_semigroup,
                        report.d_units,
                        report.gap(),
                        report.p2
                    );
                    if holds {
                        println!("result: PASS");
                        exit::OK
                    } else {
                        println!(
                            "counterexample: gap {} differs from P2 {} (the claim is refuted here)",
                            report.gap(),
                            report.p2
                        );
                        println!("result: FAIL");
                        exit::FALSIFIED
                    }
                }
                Err(e) => {
                    eprintln!("{e}");
                    exit_for(&e)
                }
            };
        }
    };
    match result {
        Ok(report) => print_check_report(&report, &context),
        Err(e) => {
            eprintln!("{e}");
            exit_for(&e)
        }
    }
}

/// JSON document emitted by the witness command.
#[derive(Serialize)]
struct WitnessJson {
    family: String,
    moduli: Vec<u64>,
    length: usize,
    /// One-based tuple form (residue 0 shown as n_i).
    witness: Vec<Vec<u64>>,
    witness_zero_based: Vec<Vec<u64>>,
    /// Total of the witness, one-based tuple form.
    sigma: Vec<u64>,
    irreducible: bool,
    verified_by_oracle: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    base: Option<Vec<Vec<u64>>>,
}

fn emit_witness(
    family: &str,
    ring: &RingSpec,
    witness: &Sequence,
    base: Option<&Sequence>,
) -> i32 {
    let indices: Vec<usize> = witness.terms().iter().map(|t| ring.index_of(t)).collect();
    let doc = WitnessJson {
        family: family.to_owned(),
        moduli: ring.moduli().to_vec(),
        length: witness.len(),
        witness: witness.terms().iter().map(|t| ring.theta(t)).collect(),
        witness_zero_based: witness.terms().iter().map(|t| t.residues().to_vec()).collect(),
        sigma: ring.theta(&sigma(ring, witness)),
        irreducible: !is_reducible(ring, witness),
        verified_by_oracle: !davenport_core::oracle::is_reducible_naive(ring, &indices),
        base: base.map(|b| b.terms().iter().map(|t| ring.theta(t)).collect()),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("witness serializes");
    text.push('\n');
    print!("{text}");
    if doc.irreducible && doc.verified_by_oracle {
        exit::OK
    } else {
        eprintln!("FALSIFICATION: emitted witness is reducible");
        exit::FALSIFIED
    }
}

fn cmd_witness(
    family: Family,
    r1: u32,
    r2: u32,
    r3: u32,
    moduli: Option<Vec<u64>>,
) -> i32 {
    let limits = Limits::default();
    match family {
        Family::Section4 => {
            if r1 + r2 + r3 == 0 {
                eprintln!("family section4 needs r1 + r2 + r3 >= 1");
                return exit::USAGE;
            }
            match tight_family_witness(r1, r2, r3, &limits) {
                Ok(w) => emit_witness("section4", &w.ring, &w.witness, None),
                Err(e) => {
                    eprintln!("{e}");
                    exit_for(&e)
                }
            }
        }
        Family::Lowerbound => {
            let Some(moduli) = moduli else {
                eprintln!("family lowerbound needs --moduli");
                return exit::USAGE;
            };
            let ring = match RingSpec::new(moduli) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{e}");
                    return exit::USAGE;
                }
            };
            let units = match ring.units(&limits) {
                Ok(u) => u,
                Err(e) => {
                    eprintln!("{e}");
                    return exit_for(&e);
                }
            };
            let base = match longest_irreducible(&ring, &units, units.len().max(1), &limits) {
                Ok((_, witness)) => witness,
                Err(e) => {
                    eprintln!("{e}");
                    return exit_for(&e);
                }
            };
            match lower_bound_witness(&ring, &base, &limits) {
                Ok(witness) => emit_witness("lowerbound", &ring, &witness, Some(&base)),
                Err(e) => {
                    eprintln!("{e}");
                    exit_for(&e)
                }
            }
        }
    }
}
