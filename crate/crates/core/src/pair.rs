use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::multiset::{Multiset, MultisetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("k must be greater than 1, got {0}")]
    KTooSmall(u32),
    #[error(transparent)]
    Multiset(#[from] MultisetError),
}

/// An unordered pair `{A, B}` of nonempty multisets.
///
/// The pair is stored in canonical orientation: the decreasing element
/// sequence of `a` is lexicographically at least that of `b`. Two pairs are
/// equal exactly when they are equal as unordered pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pair {
    a: Multiset,
    b: Multiset,
    balanced: bool,
}

/// Orients `x` and `y` canonically. Symmetric in its arguments.
pub fn pair_canonical(x: Multiset, y: Multiset) -> Pair {
    let (a, b) = if x.lex_cmp(&y) == Ordering::Less {
        (y, x)
    } else {
        (x, y)
    };
    let balanced = a.sigma() == b.sigma();
    Pair { a, b, balanced }
}

/// `A = {k^(k-1)}`, `B = {(k-1)^k}`: the pair of maximum length `2k - 1`.
pub fn extremal_construction(k: u32) -> Result<Pair, PairError> {
    if k <= 1 {
        return Err(PairError::KTooSmall(k));
    }
    let a = Multiset::repeated(k, k - 1)?;
    let b = Multiset::repeated(k - 1, k)?;
    Ok(pair_canonical(a, b))
}

impl Pair {
    pub fn new(x: Multiset, y: Multiset) -> Self {
        pair_canonical(x, y)
    }

    pub fn a(&self) -> &Multiset {
        &self.a
    }

    pub fn b(&self) -> &Multiset {
        &self.b
    }

    /// Whether `sigma(A) = sigma(B)`.
    pub fn is_balanced(&self) -> bool {
        self.balanced
    }

    /// `|A| + |B|`.
    pub fn length(&self) -> u64 {
        self.a.cardinality() + self.b.cardinality()
    }

    /// Largest element of `A ∪ B`; the pair is k-irreducible for every `k`
    /// at least this large, provided it is irreducible at all.
    pub fn max_element(&self) -> u32 {
        self.a.max().max(self.b.max())
    }

    /// Common sum when balanced.
    pub fn common_sum(&self) -> Option<u64> {
        self.balanced.then(|| self.a.sigma())
    }

    pub fn into_parts(self) -> (Multiset, Multiset) {
        (self.a, self.b)
    }

    /// Stream order: common sum ascending, then `A` and `B` each in
    /// decreasing lexicographic order.
    pub fn stream_cmp(&self, other: &Pair) -> Ordering {
        self.a
            .sigma()
            .cmp(&other.a.sigma())
            .then_with(|| other.a.lex_cmp(&self.a))
            .then_with(|| other.b.lex_cmp(&self.b))
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.a, self.b)
    }
}
