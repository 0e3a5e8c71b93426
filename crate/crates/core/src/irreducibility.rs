//! Deciding irreducibility of a pair.
//!
//! For multisets of positive integers a submultiset is proper and nonempty
//! exactly when its sum lies strictly between `0` and the total. A balanced
//! pair with common sum `S` is therefore reducible iff the submultiset sums
//! of `A` and `B` meet somewhere in the open interval `(0, S)`. The fast path
//! computes both sum sets with a word-parallel bounded knapsack; the naive
//! path enumerates submultisets explicitly and serves as an oracle.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::multiset::{Multiset, Run};
use crate::pair::Pair;

/// Total length `|A| + |B|` accepted by [`is_irreducible_naive`].
pub const NAIVE_LENGTH_LIMIT: u64 = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IrreducibilityError {
    #[error("pair length {0} exceeds the naive enumeration limit of {NAIVE_LENGTH_LIMIT}")]
    TooLarge(u64),
}

/// The set of submultiset sums of a multiset, as a bit vector over `[0, S]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumSet {
    total: u64,
    words: Vec<u64>,
}

impl SumSet {
    /// Only the empty sum.
    fn zero(total: u64) -> Self {
        let mut words = vec![0u64; (total as usize + 1).div_ceil(64)];
        words[0] = 1;
        SumSet { total, words }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn contains(&self, s: u64) -> bool {
        s <= self.total && self.words[(s / 64) as usize] >> (s % 64) & 1 == 1
    }

    /// Achievable sums in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..=self.total).filter(|&s| self.contains(s))
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn or_shifted(&mut self, shift: u64) {
        if shift > self.total {
            return;
        }
        let n = self.words.len();
        let ws = (shift / 64) as usize;
        let bs = (shift % 64) as u32;
        for i in (ws..n).rev() {
            let src = i - ws;
            let mut v = self.words[src] << bs;
            if bs > 0 && src > 0 {
                v |= self.words[src - 1] >> (64 - bs);
            }
            self.words[i] |= v;
        }
        self.trim();
    }

    fn trim(&mut self) {
        let used = (self.total % 64) as u32 + 1;
        if used < 64 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << used) - 1;
        }
    }

    /// Adds a run of `count` copies of `value` by binary splitting the count.
    fn add_run(&mut self, run: Run) {
        let mut remaining = run.count as u64;
        let mut chunk = 1u64;
        while remaining > 0 {
            let take = chunk.min(remaining);
            self.or_shifted(take * run.value as u64);
            remaining -= take;
            chunk <<= 1;
        }
    }

    fn from_runs(runs: &[Run], total: u64) -> Self {
        let mut set = SumSet::zero(total);
        for &run in runs {
            set.add_run(run);
        }
        set
    }

    /// Sums strictly between `0` and the total that both sets contain.
    pub fn common_interior<'a>(&'a self, other: &'a SumSet) -> impl Iterator<Item = u64> + 'a {
        let total = self.total.min(other.total);
        (1..total).filter(move |&s| self.contains(s) && other.contains(s))
    }

    /// True when the sets, over the same total `S`, share no sum other than
    /// `0` and `S`. This is the irreducibility test for a balanced pair.
    pub fn only_trivial_overlap(&self, other: &SumSet) -> bool {
        if self.total != other.total {
            return false;
        }
        let last = self.words.len() - 1;
        let top = 1u64 << (self.total % 64);
        for (i, (x, y)) in self.words.iter().zip(&other.words).enumerate() {
            let mut both = x & y;
            if i == 0 {
                both &= !1;
            }
            if i == last {
                both &= !top;
            }
            if both != 0 {
                return false;
            }
        }
        true
    }
}

/// Sums of every submultiset of `ms`.
pub fn proper_subset_sums(ms: &Multiset) -> SumSet {
    SumSet::from_runs(ms.runs(), ms.sigma())
}

/// Decides irreducibility. Unbalanced pairs are never irreducible.
pub fn is_irreducible(p: &Pair) -> bool {
    if !p.is_balanced() {
        return false;
    }
    proper_subset_sums(p.a()).only_trivial_overlap(&proper_subset_sums(p.b()))
}

/// All proper nonempty submultiset sums, by explicit enumeration of
/// multiplicity vectors.
fn naive_proper_sums(ms: &Multiset) -> BTreeSet<u64> {
    let runs = ms.runs();
    let mut chosen = vec![0u32; runs.len()];
    let mut sums = BTreeSet::new();
    loop {
        let mut i = 0;
        while i < runs.len() && chosen[i] == runs[i].count {
            chosen[i] = 0;
            i += 1;
        }
        if i == runs.len() {
            break;
        }
        chosen[i] += 1;
        let full = chosen.iter().zip(runs).all(|(&c, r)| c == r.count);
        if !full {
            let sum = chosen
                .iter()
                .zip(runs)
                .map(|(&c, r)| c as u64 * r.value as u64)
                .sum();
            sums.insert(sum);
        }
    }
    sums
}

/// Exponential reference implementation of [`is_irreducible`].
pub fn is_irreducible_naive(p: &Pair) -> Result<bool, IrreducibilityError> {
    if p.length() > NAIVE_LENGTH_LIMIT {
        return Err(IrreducibilityError::TooLarge(p.length()));
    }
    if !p.is_balanced() {
        return Ok(false);
    }
    let a_sums = naive_proper_sums(p.a());
    let b_sums = naive_proper_sums(p.b());
    for sa in &a_sums {
        for sb in &b_sums {
            if sa == sb {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Proper nonempty submultisets `a_sub ⊂ A`, `b_sub ⊂ B` with equal sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducibilityWitness {
    pub a_sub: Multiset,
    pub b_sub: Multiset,
}

impl ReducibilityWitness {
    pub fn sum(&self) -> u64 {
        self.a_sub.sigma()
    }

    /// Structural check against the pair it claims to reduce.
    pub fn is_valid_for(&self, p: &Pair) -> bool {
        let s = self.a_sub.sigma();
        p.is_balanced()
            && s == self.b_sub.sigma()
            && 0 < s
            && s < p.a().sigma()
            && self.a_sub.is_submultiset_of(p.a())
            && self.b_sub.is_submultiset_of(p.b())
            && self.a_sub != *p.a()
            && self.b_sub != *p.b()
    }
}

impl fmt::Display for ReducibilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "witness: {} | {}", self.a_sub, self.b_sub)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reducibility {
    Irreducible,
    /// `sigma(A) != sigma(B)`; no equal-sum witness can exist.
    Unbalanced,
    Reducible(ReducibilityWitness),
}

impl Reducibility {
    pub fn witness(&self) -> Option<&ReducibilityWitness> {
        match self {
            Reducibility::Reducible(w) => Some(w),
            _ => None,
        }
    }
}

/// Submultiset of `ms` summing to `target`, taking as many copies of the
/// largest values as the remaining runs allow.
fn reconstruct(ms: &Multiset, target: u64) -> Option<Multiset> {
    let runs = ms.runs();
    // suffix[i] holds the sums reachable with runs[i..]
    let mut suffix = vec![SumSet::zero(ms.sigma()); runs.len() + 1];
    for i in (0..runs.len()).rev() {
        let mut next = suffix[i + 1].clone();
        next.add_run(runs[i]);
        suffix[i] = next;
    }
    if !suffix[0].contains(target) {
        return None;
    }
    let mut left = target;
    let mut picked = Vec::new();
    for (i, run) in runs.iter().enumerate() {
        let v = run.value as u64;
        let take = (0..=run.count)
            .rev()
            .find(|&c| c as u64 * v <= left && suffix[i + 1].contains(left - c as u64 * v))?;
        if take > 0 {
            picked.push(Run {
                value: run.value,
                count: take,
            });
            left -= take as u64 * v;
        }
    }
    debug_assert_eq!(left, 0);
    Multiset::from_runs(picked).ok()
}

/// Finds a witness of reducibility at the smallest common interior sum.
pub fn reducibility_witness(p: &Pair) -> Reducibility {
    if !p.is_balanced() {
        return Reducibility::Unbalanced;
    }
    let sa = proper_subset_sums(p.a());
    let sb = proper_subset_sums(p.b());
    let Some(s) = sa.common_interior(&sb).next() else {
        return Reducibility::Irreducible;
    };
    let a_sub = reconstruct(p.a(), s).expect("sum is reachable in A");
    let b_sub = reconstruct(p.b(), s).expect("sum is reachable in B");
    Reducibility::Reducible(ReducibilityWitness { a_sub, b_sub })
}
