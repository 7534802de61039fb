//! Exhaustive and randomized cross-checks.
//!
//! Every graph is run through three pairs of independent routes:
//!
//! * NFC by definition against NFC by structure (plus witness re-checks);
//! * a perfect matching from the blossom engine against the absence of a
//!   Tutte set from exhaustive search;
//! * the engine's maximum matching size against the brute-force oracle.
//!
//! Disagreements are collected as [`Mismatch`] records, never raised as
//! errors.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::criticality::{
    is_factor_critical, is_nfc_by_definition, is_nfc_by_theorem, recheck, tutte_witness_with_limit,
    Property, TUTTE_DEFAULT_LIMIT,
};
use crate::generate::{random_graph, XorShift64Star};
use crate::graph::Graph;
use crate::matching::{has_perfect_matching, max_matching};
use crate::oracle::{max_matching_size_brute, ORACLE_MAX_ORDER};

/// Largest order enumerated without an override.
pub const EXHAUSTIVE_DEFAULT_LIMIT: usize = 7;
/// Largest order enumerated at all.
pub const EXHAUSTIVE_HARD_LIMIT: usize = 8;

pub const CSV_HEADER: &str =
    "order,graphs_checked,nfc_count,factor_critical_count,perfect_matching_count,mismatch_count";

/// Edge probabilities cycled through in random mode.
pub const RANDOM_PROBABILITIES: [f64; 3] = [0.2, 0.5, 0.8];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("order {n} exceeds the enumeration limit {limit}")]
    BoundExceeded { n: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    Exhaustive,
    Random { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub mode: Mode,
    /// Permits exhaustive enumeration up to [`EXHAUSTIVE_HARD_LIMIT`].
    pub allow_large: bool,
    /// Worker threads; results are identical for every value.
    pub jobs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: Mode::Exhaustive,
            allow_large: false,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MismatchKind {
    NfcRoutes,
    TutteCondition,
    OracleSize,
    WitnessRejected,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Mismatch {
    pub kind: MismatchKind,
    /// The offending graph in the text format.
    pub graph: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub order: usize,
    pub graphs_checked: u64,
    pub nfc_count: u64,
    pub factor_critical_count: u64,
    pub perfect_matching_count: u64,
    pub mismatches: Vec<Mismatch>,
}

impl VerificationReport {
    fn merge(&mut self, other: VerificationReport) {
        self.graphs_checked += other.graphs_checked;
        self.nfc_count += other.nfc_count;
        self.factor_critical_count += other.factor_critical_count;
        self.perfect_matching_count += other.perfect_matching_count;
        self.mismatches.extend(other.mismatches);
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.order,
            self.graphs_checked,
            self.nfc_count,
            self.factor_critical_count,
            self.perfect_matching_count,
            self.mismatches.len()
        )
    }
}

pub fn to_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for r in reports {
        writeln!(out, "{}", r.csv_row()).unwrap();
    }
    out
}

/// Appends rows to a CSV file, writing the header when the file is new or
/// empty.
pub fn append_csv(path: &Path, reports: &[VerificationReport]) -> std::io::Result<()> {
    let fresh = std::fs::metadata(path)
        .map(|m| m.len() == 0)
        .unwrap_or(true);
    let mut f = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    if fresh {
        writeln!(f, "{CSV_HEADER}")?;
    }
    for r in reports {
        writeln!(f, "{}", r.csv_row())?;
    }
    Ok(())
}

fn pair_count(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// The labeled graph on `n` vertices whose edge set is `mask`; bit `i`
/// stands for the `i`-th pair `(u, v)`, `u < v`, in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::with_capacity(mask.count_ones() as usize);
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, edges).expect("mask pairs are simple")
}

/// All `2^(n(n-1)/2)` labeled graphs on `n` vertices.
#[derive(Debug)]
pub struct LabeledGraphs {
    n: usize,
    next: u64,
    end: u64,
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        (self.next < self.end).then(|| {
            self.next += 1;
            graph_from_mask(self.n, self.next - 1)
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

fn exhaustive_limit(allow_large: bool) -> usize {
    if allow_large {
        EXHAUSTIVE_HARD_LIMIT
    } else {
        EXHAUSTIVE_DEFAULT_LIMIT
    }
}

pub fn enumerate_labeled_graphs(
    n: usize,
    allow_large: bool,
) -> Result<LabeledGraphs, HarnessError> {
    let limit = exhaustive_limit(allow_large);
    if n > limit {
        return Err(HarnessError::BoundExceeded { n, limit });
    }
    Ok(LabeledGraphs {
        n,
        next: 0,
        end: 1u64 << pair_count(n),
    })
}

/// Runs every cross-check on one graph and folds the result into `report`.
pub fn check_graph(g: &Graph, report: &mut VerificationReport) {
    let mut flag = |kind, detail: String| {
        report.mismatches.push(Mismatch {
            kind,
            graph: g.to_text(),
            detail,
        })
    };

    let def = is_nfc_by_definition(g);
    let thm = is_nfc_by_theorem(g);
    if def.holds != thm.holds {
        flag(
            MismatchKind::NfcRoutes,
            format!("definition={} theorem={}", def.holds, thm.holds),
        );
    }
    for verdict in [&def, &thm] {
        if let Err(e) = recheck(g, Property::Nfc, verdict) {
            flag(MismatchKind::WitnessRejected, e.to_string());
        }
    }

    let fc = is_factor_critical(g);
    if let Err(e) = recheck(g, Property::FactorCritical, &fc) {
        flag(MismatchKind::WitnessRejected, e.to_string());
    }

    let engine = max_matching(g).len();
    let perfect = has_perfect_matching(g);
    let tutte = tutte_witness_with_limit(g, usize::MAX).expect("no limit");
    if perfect == tutte.is_some() {
        flag(
            MismatchKind::TutteCondition,
            format!("perfect={perfect} tutte_set={tutte:?}"),
        );
    }

    if g.order() <= ORACLE_MAX_ORDER {
        let brute = max_matching_size_brute(g).expect("within guard");
        if brute != engine {
            flag(
                MismatchKind::OracleSize,
                format!("engine={engine} oracle={brute}"),
            );
        }
    }

    report.graphs_checked += 1;
    report.nfc_count += def.holds as u64;
    report.factor_critical_count += fc.holds as u64;
    report.perfect_matching_count += perfect as u64;
}

/// Checks the graphs produced by `graph_at(0..total)`, split into `jobs`
/// contiguous ranges and merged in range order.
fn run_partitioned<F>(order: usize, total: u64, jobs: usize, graph_at: F) -> VerificationReport
where
    F: Fn(u64) -> Graph + Sync,
{
    let jobs = jobs.max(1) as u64;
    let chunk = total.div_ceil(jobs).max(1);
    let work = |lo: u64, hi: u64| {
        let mut r = VerificationReport {
            order,
            ..Default::default()
        };
        for i in lo..hi {
            check_graph(&graph_at(i), &mut r);
        }
        r
    };

    let mut report = VerificationReport {
        order,
        ..Default::default()
    };
    if jobs == 1 {
        report.merge(work(0, total));
    } else {
        let parts: Vec<VerificationReport> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|j| (j * chunk, ((j + 1) * chunk).min(total)))
                .filter(|(lo, hi)| lo < hi)
                .map(|(lo, hi)| scope.spawn(move || work(lo, hi)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        });
        for p in parts {
            report.merge(p);
        }
    }
    report.mismatches.sort();
    report
}

/// Seed of the `index`-th random graph of order `n`.
pub fn random_seed(seed: u64, n: usize, index: usize) -> u64 {
    let mut rng = XorShift64Star::new(seed ^ (n as u64).rotate_left(32) ^ index as u64);
    rng.next_u64()
}

/// The `index`-th random graph of order `n` in random mode.
pub fn random_instance(seed: u64, n: usize, index: usize) -> Graph {
    let p = RANDOM_PROBABILITIES[index % RANDOM_PROBABILITIES.len()];
    random_graph(n, p, random_seed(seed, n, index))
}

/// One report per order `0..=n_max`.
pub fn verify_theorems(
    n_max: usize,
    options: VerifyOptions,
) -> Result<Vec<VerificationReport>, HarnessError> {
    match options.mode {
        Mode::Exhaustive => {
            let limit = exhaustive_limit(options.allow_large);
            if n_max > limit {
                return Err(HarnessError::BoundExceeded { n: n_max, limit });
            }
            Ok((0..=n_max)
                .map(|n| {
                    let total = 1u64 << pair_count(n);
                    run_partitioned(n, total, options.jobs, |mask| graph_from_mask(n, mask))
                })
                .collect())
        }
        Mode::Random { count, seed } => {
            if n_max > TUTTE_DEFAULT_LIMIT {
                return Err(HarnessError::BoundExceeded {
                    n: n_max,
                    limit: TUTTE_DEFAULT_LIMIT,
                });
            }
            Ok((0..=n_max)
                .map(|n| {
                    run_partitioned(n, count as u64, options.jobs, |i| {
                        random_instance(seed, n, i as usize)
                    })
                })
                .collect())
        }
    }
}
