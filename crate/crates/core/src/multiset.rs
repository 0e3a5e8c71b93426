//! Run-length encoded multisets of positive integers.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Largest element value accepted anywhere in the library.
pub const MAX_VALUE: u64 = 1_000_000;
/// Largest total multiplicity accepted for a single multiset.
pub const MAX_CARDINALITY: u64 = 1_000_000;
/// Every sum must fit in a 32-bit signed integer.
pub const MAX_SUM: u64 = i32::MAX as u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultisetError {
    #[error("element value {0} is not positive")]
    NonPositiveValue(i64),
    #[error("multiplicity {count} of value {value} is negative")]
    NonPositiveCount { value: i64, count: i64 },
    #[error("multiset is empty")]
    Empty,
    #[error("element value {0} exceeds the limit of {MAX_VALUE}")]
    ValueTooLarge(i64),
    #[error("cardinality {0} exceeds the limit of {MAX_CARDINALITY}")]
    TooManyElements(u64),
    #[error("sum {0} does not fit in a 32-bit signed integer")]
    SumOverflow(u64),
}

/// A single `(value, count)` run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Run {
    pub value: u32,
    pub count: u32,
}

/// A nonempty multiset of positive integers, stored as runs with strictly
/// decreasing values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multiset {
    runs: Vec<Run>,
    sigma: u64,
    cardinality: u64,
}

/// `(sigma, max, cardinality)` of a multiset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measures {
    pub sigma: u64,
    pub max: u32,
    pub cardinality: u64,
}

/// Builds a multiset from arbitrary `(value, count)` pairs: duplicate values
/// are merged, zero counts dropped, and the runs sorted by decreasing value.
pub fn normalize<I>(raw: I) -> Result<Multiset, MultisetError>
where
    I: IntoIterator<Item = (i64, i64)>,
{
    let mut merged: BTreeMap<u32, u64> = BTreeMap::new();
    for (value, count) in raw {
        if value <= 0 {
            return Err(MultisetError::NonPositiveValue(value));
        }
        if count < 0 {
            return Err(MultisetError::NonPositiveCount { value, count });
        }
        if value as u64 > MAX_VALUE {
            return Err(MultisetError::ValueTooLarge(value));
        }
        if count as u64 > MAX_CARDINALITY {
            return Err(MultisetError::TooManyElements(count as u64));
        }
        if count == 0 {
            continue;
        }
        *merged.entry(value as u32).or_insert(0) += count as u64;
    }
    let mut runs = Vec::with_capacity(merged.len());
    for (value, count) in merged.into_iter().rev() {
        if count > MAX_CARDINALITY {
            return Err(MultisetError::TooManyElements(count));
        }
        runs.push(Run {
            value,
            count: count as u32,
        });
    }
    Multiset::from_runs(runs)
}

impl Multiset {
    /// Builds a multiset from runs that are already canonical (strictly
    /// decreasing values, positive counts), checking the size limits.
    pub fn from_runs(runs: Vec<Run>) -> Result<Self, MultisetError> {
        if runs.is_empty() {
            return Err(MultisetError::Empty);
        }
        debug_assert!(runs.windows(2).all(|w| w[0].value > w[1].value));
        debug_assert!(runs.iter().all(|r| r.value > 0 && r.count > 0));
        let mut sigma = 0u64;
        let mut cardinality = 0u64;
        for run in &runs {
            if run.value as u64 > MAX_VALUE {
                return Err(MultisetError::ValueTooLarge(run.value as i64));
            }
            sigma += run.value as u64 * run.count as u64;
            cardinality += run.count as u64;
        }
        if cardinality > MAX_CARDINALITY {
            return Err(MultisetError::TooManyElements(cardinality));
        }
        if sigma > MAX_SUM {
            return Err(MultisetError::SumOverflow(sigma));
        }
        Ok(Multiset {
            runs,
            sigma,
            cardinality,
        })
    }

    /// Multiset from a slice of elements in any order.
    pub fn from_elements(elements: &[u32]) -> Result<Self, MultisetError> {
        normalize(elements.iter().map(|&v| (v as i64, 1)))
    }

    /// `count` copies of `value`.
    pub fn repeated(value: u32, count: u32) -> Result<Self, MultisetError> {
        normalize([(value as i64, count as i64)])
    }

    pub(crate) fn from_count_map(map: &BTreeMap<u32, u32>) -> Result<Self, MultisetError> {
        let runs = map
            .iter()
            .rev()
            .filter(|(_, &c)| c > 0)
            .map(|(&value, &count)| Run { value, count })
            .collect();
        Self::from_runs(runs)
    }

    pub(crate) fn count_map(&self) -> BTreeMap<u32, u32> {
        self.runs.iter().map(|r| (r.value, r.count)).collect()
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn max(&self) -> u32 {
        self.runs[0].value
    }

    pub fn min(&self) -> u32 {
        self.runs[self.runs.len() - 1].value
    }

    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    pub fn measures(&self) -> Measures {
        Measures {
            sigma: self.sigma,
            max: self.max(),
            cardinality: self.cardinality,
        }
    }

    /// Multiplicity of `value` (zero when absent).
    pub fn multiplicity(&self, value: u32) -> u32 {
        self.runs
            .binary_search_by(|r| value.cmp(&r.value))
            .map(|i| self.runs[i].count)
            .unwrap_or(0)
    }

    pub fn contains(&self, value: u32) -> bool {
        self.multiplicity(value) > 0
    }

    /// Elements in decreasing order, repeated by multiplicity.
    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        self.runs
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.count as usize))
    }

    /// True when the two multisets share at least one value.
    pub fn intersects(&self, other: &Multiset) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.runs.len() && j < other.runs.len() {
            match self.runs[i].value.cmp(&other.runs[j].value) {
                Ordering::Equal => return true,
                Ordering::Greater => i += 1,
                Ordering::Less => j += 1,
            }
        }
        false
    }

    /// Multiset inclusion, respecting multiplicities.
    pub fn is_submultiset_of(&self, other: &Multiset) -> bool {
        self.runs
            .iter()
            .all(|r| other.multiplicity(r.value) >= r.count)
    }

    /// Lexicographic comparison of the decreasing element sequences.
    pub fn lex_cmp(&self, other: &Multiset) -> Ordering {
        self.elements().cmp(other.elements())
    }
}

impl fmt::Display for Multiset {
    /// Text form: `v^c` runs separated by spaces, `^1` omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, run) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if run.count == 1 {
                write!(f, "{}", run.value)?;
            } else {
                write!(f, "{}^{}", run.value, run.count)?;
            }
        }
        Ok(())
    }
}
