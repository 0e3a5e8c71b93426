//! Exhaustive search over k-irreducible pairs.
//!
//! Candidates are grouped by their common sum `S`. For each `S` every
//! multiset with values in `[1, k]` summing to `S` is generated once, and
//! each canonically oriented pair of such multisets is tested for
//! irreducibility. Brute mode tests every candidate and consults no bound
//! on pair shape. Pruned mode only generates multisets with at most `k`
//! elements and skips candidates with `|A| > max(B)`, `|B| > max(A)`, or a
//! shared value when the length exceeds two.
//!
//! Work is split by `S` and by the index of `A` within the list for that
//! `S`; results are merged and sorted into stream order, so the output does
//! not depend on the number of workers.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::irreducibility::{proper_subset_sums, SumSet};
use crate::multiset::{Multiset, Run};
use crate::pair::{extremal_construction, Pair};

/// Largest `k` accepted in brute mode.
pub const BRUTE_MAX_K: u32 = 6;
/// Largest `k` accepted in pruned mode.
pub const PRUNED_MAX_K: u32 = 9;
/// Upper bound on the candidate pairs a single run may generate.
pub const MAX_CANDIDATES: u64 = 500_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("k = {k} exceeds the {mode} mode limit of {limit}")]
    KTooLarge { k: u32, mode: Mode, limit: u32 },
    #[error("search would generate {candidates} candidate pairs (limit {MAX_CANDIDATES}); lower the sum cap")]
    TooManyCandidates { candidates: u64 },
    #[error("k must be greater than 1, got {0}")]
    KTooSmall(u32),
    #[error("could not start worker pool: {0}")]
    WorkerPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Test every balanced candidate; no pruning bound is used.
    Brute,
    /// Skip candidates that violate the length bounds or share a value.
    Pruned,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Brute => "brute",
            Mode::Pruned => "pruned",
        }
    }

    pub fn max_k(self) -> u32 {
        match self {
            Mode::Brute => BRUTE_MAX_K,
            Mode::Pruned => PRUNED_MAX_K,
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumConfig {
    pub k: u32,
    /// Largest common sum scanned.
    pub sum_cap: u64,
    /// Inclusive bounds on `|A| + |B|`.
    pub length_window: Option<(u64, u64)>,
    pub mode: Mode,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl EnumConfig {
    /// Configuration with the default cap `sum_cap = k^2`.
    pub fn new(k: u32, mode: Mode) -> Self {
        EnumConfig {
            k,
            sum_cap: k as u64 * k as u64,
            length_window: None,
            mode,
            workers: None,
        }
    }

    pub fn with_sum_cap(mut self, sum_cap: u64) -> Self {
        self.sum_cap = sum_cap;
        self
    }

    pub fn with_length_window(mut self, lo: u64, hi: u64) -> Self {
        self.length_window = Some((lo, hi));
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    fn max_parts(&self) -> Option<usize> {
        match self.mode {
            Mode::Brute => None,
            Mode::Pruned => Some(self.k as usize),
        }
    }

    /// Number of candidate pairs the scan will consider before filtering.
    pub fn candidate_count(&self) -> u64 {
        partition_counts(self.k, self.sum_cap, self.max_parts())
            .into_iter()
            .skip(1)
            .map(|n| n.saturating_mul(n.saturating_add(1)) / 2)
            .fold(0u64, u64::saturating_add)
    }

    pub fn validate(&self) -> Result<(), EnumError> {
        if self.k == 0 {
            return Err(EnumError::InvalidConfig("k must be at least 1".into()));
        }
        if self.sum_cap == 0 {
            return Err(EnumError::InvalidConfig(
                "sum cap must be at least 1".into(),
            ));
        }
        if let Some((lo, hi)) = self.length_window {
            if lo > hi {
                return Err(EnumError::InvalidConfig(format!(
                    "empty length window [{lo}, {hi}]"
                )));
            }
        }
        if self.workers == Some(0) {
            return Err(EnumError::InvalidConfig(
                "workers must be at least 1".into(),
            ));
        }
        let limit = self.mode.max_k();
        if self.k > limit {
            return Err(EnumError::KTooLarge {
                k: self.k,
                mode: self.mode,
                limit,
            });
        }
        let candidates = self.candidate_count();
        if candidates > MAX_CANDIDATES {
            return Err(EnumError::TooManyCandidates { candidates });
        }
        Ok(())
    }

    fn in_window(&self, length: u64) -> bool {
        self.length_window
            .is_none_or(|(lo, hi)| lo <= length && length <= hi)
    }
}

/// `counts[s]` = number of multisets with values in `[1, k]`, sum `s`, and at
/// most `max_parts` elements, for `s` in `0..=cap`.
fn partition_counts(k: u32, cap: u64, max_parts: Option<usize>) -> Vec<u64> {
    let cap = cap as usize;
    match max_parts {
        None => {
            let mut counts = vec![0u64; cap + 1];
            counts[0] = 1;
            for v in 1..=k as usize {
                for s in v..=cap {
                    counts[s] = counts[s].saturating_add(counts[s - v]);
                }
            }
            counts
        }
        Some(m) => {
            // table[len][s]
            let mut table = vec![vec![0u64; cap + 1]; m + 1];
            table[0][0] = 1;
            for v in 1..=k as usize {
                for len in 1..=m {
                    for s in v..=cap {
                        let add = table[len - 1][s - v];
                        table[len][s] = table[len][s].saturating_add(add);
                    }
                }
            }
            (0..=cap)
                .map(|s| table.iter().map(|row| row[s]).fold(0, u64::saturating_add))
                .collect()
        }
    }
}

/// Multisets with values in `[1, k]` summing to a fixed total, in
/// decreasing lexicographic order of their element sequences.
#[derive(Debug, Clone)]
pub struct Partitions {
    k: u32,
    total: u64,
    max_parts: usize,
    parts: Vec<u32>,
    remaining: u64,
    started: bool,
    done: bool,
}

impl Partitions {
    pub fn new(k: u32, total: u64) -> Self {
        Self::with_max_parts(k, total, None)
    }

    /// Restricts the output to multisets with at most `max_parts` elements.
    pub fn with_max_parts(k: u32, total: u64, max_parts: Option<usize>) -> Self {
        Partitions {
            k,
            total,
            max_parts: max_parts.unwrap_or(usize::MAX),
            parts: Vec::new(),
            remaining: total,
            started: false,
            done: false,
        }
    }

    fn fits(&self, len: usize, remaining: u64, largest: u32) -> bool {
        let slots = (self.max_parts - len) as u64;
        remaining <= slots.saturating_mul(largest as u64)
    }

    fn fill(&mut self) {
        while self.remaining > 0 {
            let cap = self.parts.last().copied().unwrap_or(self.k) as u64;
            let p = cap.min(self.remaining) as u32;
            self.parts.push(p);
            self.remaining -= p as u64;
        }
    }

    fn current(&self) -> Multiset {
        let mut runs: Vec<Run> = Vec::new();
        for &p in &self.parts {
            match runs.last_mut() {
                Some(r) if r.value == p => r.count += 1,
                _ => runs.push(Run { value: p, count: 1 }),
            }
        }
        Multiset::from_runs(runs).expect("partition of a positive total")
    }
}

impl Iterator for Partitions {
    type Item = Multiset;

    fn next(&mut self) -> Option<Multiset> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.k == 0 || self.total == 0 || !self.fits(0, self.total, self.k) {
                self.done = true;
                return None;
            }
            self.fill();
            return Some(self.current());
        }
        while let Some(p) = self.parts.pop() {
            self.remaining += p as u64;
            if p > 1 {
                let q = p - 1;
                if self.fits(self.parts.len(), self.remaining, q) {
                    self.parts.push(q);
                    self.remaining -= q as u64;
                    self.fill();
                    return Some(self.current());
                }
            }
        }
        self.done = true;
        None
    }
}

/// Every multiset with values in `[1, k]` and sum exactly `total`.
pub fn enumerate_multisets(k: u32, total: u64) -> Partitions {
    Partitions::new(k, total)
}

struct Candidate {
    ms: Multiset,
    sums: SumSet,
}

#[derive(Default)]
struct Tally {
    pairs: Vec<Pair>,
    scanned: u64,
    irreducible: u64,
}

fn skip_by_bounds(a: &Multiset, b: &Multiset) -> bool {
    a.cardinality() > b.max() as u64
        || b.cardinality() > a.max() as u64
        || (a.cardinality() + b.cardinality() > 2 && a.intersects(b))
}

/// Pairs `(list[i], list[j])` for `j >= i`.
fn scan_row(cfg: &EnumConfig, list: &[Candidate], i: usize) -> Tally {
    let mut tally = Tally::default();
    let a = &list[i];
    for b in &list[i..] {
        let length = a.ms.cardinality() + b.ms.cardinality();
        if !cfg.in_window(length) {
            continue;
        }
        if cfg.mode == Mode::Pruned && skip_by_bounds(&a.ms, &b.ms) {
            continue;
        }
        tally.scanned += 1;
        if a.sums.only_trivial_overlap(&b.sums) {
            tally.irreducible += 1;
            tally.pairs.push(Pair::new(a.ms.clone(), b.ms.clone()));
        }
    }
    tally
}

fn scan(cfg: &EnumConfig) -> Result<Tally, EnumError> {
    cfg.validate()?;
    let run = || {
        let lists: Vec<Vec<Candidate>> = (1..=cfg.sum_cap)
            .into_par_iter()
            .map(|s| {
                Partitions::with_max_parts(cfg.k, s, cfg.max_parts())
                    .map(|ms| {
                        let sums = proper_subset_sums(&ms);
                        Candidate { ms, sums }
                    })
                    .collect()
            })
            .collect();
        let rows: Vec<(usize, usize)> = lists
            .iter()
            .enumerate()
            .flat_map(|(s, list)| (0..list.len()).map(move |i| (s, i)))
            .collect();
        let tallies: Vec<Tally> = rows
            .par_iter()
            .map(|&(s, i)| scan_row(cfg, &lists[s], i))
            .collect();
        let mut total = Tally::default();
        for t in tallies {
            total.scanned += t.scanned;
            total.irreducible += t.irreducible;
            total.pairs.extend(t.pairs);
        }
        total.pairs.sort_by(|x, y| x.stream_cmp(y));
        total
    };
    match cfg.workers {
        None => Ok(run()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| EnumError::WorkerPool(e.to_string()))?;
            Ok(pool.install(run))
        }
    }
}

/// All canonical k-irreducible pairs with common sum at most `sum_cap`
/// (and length in the window, if any), in stream order.
pub fn enumerate_irreducible(cfg: &EnumConfig) -> Result<Vec<Pair>, EnumError> {
    scan(cfg).map(|t| t.pairs)
}

/// Result of an `ℓ(k)` computation, with the caps that bound its validity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllReport {
    pub k: u32,
    pub ell: u64,
    pub witnesses: Vec<Pair>,
    pub pairs_scanned: u64,
    pub irreducible_count: u64,
    pub mode: Mode,
    pub sum_cap: u64,
    pub length_window: Option<(u64, u64)>,
    /// Seconds.
    pub wall_time: f64,
}

impl EllReport {
    /// Pretty-printed JSON, identical for a report and its cached copy.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Maximum length over the enumerated irreducible pairs, with every pair
/// attaining it.
pub fn compute_ell(cfg: &EnumConfig) -> Result<EllReport, EnumError> {
    let start = Instant::now();
    let tally = scan(cfg)?;
    let ell = tally.pairs.iter().map(Pair::length).max().unwrap_or(0);
    let witnesses = tally
        .pairs
        .into_iter()
        .filter(|p| p.length() == ell)
        .collect();
    Ok(EllReport {
        k: cfg.k,
        ell,
        witnesses,
        pairs_scanned: tally.scanned,
        irreducible_count: tally.irreducible,
        mode: cfg.mode,
        sum_cap: cfg.sum_cap,
        length_window: cfg.length_window,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Irreducible pairs of length exactly `2k - 1` within the caps.
pub fn extremal_pairs(cfg: &EnumConfig) -> Result<Vec<Pair>, EnumError> {
    if cfg.k <= 1 {
        return Err(EnumError::KTooSmall(cfg.k));
    }
    let target = 2 * cfg.k as u64 - 1;
    let cfg = cfg.clone().with_length_window(target, target);
    enumerate_irreducible(&cfg)
}

/// `|A| <= max(B)` and `|B| <= max(A)`.
pub fn verify_theorem_bounds(p: &Pair) -> bool {
    p.a().cardinality() <= p.b().max() as u64 && p.b().cardinality() <= p.a().max() as u64
}

/// Whether `pairs` is exactly the extremal construction for `k`.
pub fn is_unique_extremal(k: u32, pairs: &[Pair]) -> bool {
    match extremal_construction(k) {
        Ok(expected) => pairs.len() == 1 && pairs[0] == expected,
        Err(_) => false,
    }
}
