//! Zero-sum sequences of nonzero integers and their pair form.

use thiserror::Error;

use crate::multiset::{normalize, MultisetError};
use crate::pair::{pair_canonical, Pair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("sequence has no terms")]
    Empty,
    #[error("term {index} is zero")]
    ContainsZero { index: usize },
    #[error("terms sum to {0}, not zero")]
    NotZeroSum(i64),
    #[error("pair is unbalanced: sums {0} and {1} differ")]
    Unbalanced(u64, u64),
    #[error(transparent)]
    Multiset(#[from] MultisetError),
}

/// A nonempty sequence of nonzero integers summing to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroSumSequence {
    terms: Vec<i64>,
}

impl ZeroSumSequence {
    pub fn new(terms: Vec<i64>) -> Result<Self, SequenceError> {
        if terms.is_empty() {
            return Err(SequenceError::Empty);
        }
        if let Some(index) = terms.iter().position(|&t| t == 0) {
            return Err(SequenceError::ContainsZero { index });
        }
        let total = terms
            .iter()
            .try_fold(0i64, |acc, &t| acc.checked_add(t))
            .unwrap_or(i64::MAX);
        if total != 0 {
            return Err(SequenceError::NotZeroSum(total));
        }
        Ok(ZeroSumSequence { terms })
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    /// Smallest `k` with every term in `[-k, k]`.
    pub fn alphabet_bound(&self) -> u64 {
        self.terms
            .iter()
            .map(|t| t.unsigned_abs())
            .max()
            .unwrap_or(0)
    }
}

/// `A` collects the positive terms, `B` the magnitudes of the negative ones.
pub fn sequence_to_pair(seq: &ZeroSumSequence) -> Result<Pair, SequenceError> {
    let positives = seq.terms.iter().filter(|&&t| t > 0).map(|&t| (t, 1));
    let negatives = seq.terms.iter().filter(|&&t| t < 0).map(|&t| (-t, 1));
    let a = normalize(positives)?;
    let b = normalize(negatives)?;
    Ok(pair_canonical(a, b))
}

/// Emits `A` descending followed by the negated elements of `B` descending.
pub fn pair_to_sequence(p: &Pair) -> Result<ZeroSumSequence, SequenceError> {
    if !p.is_balanced() {
        return Err(SequenceError::Unbalanced(p.a().sigma(), p.b().sigma()));
    }
    let terms = p
        .a()
        .elements()
        .map(i64::from)
        .chain(p.b().elements().map(|v| -i64::from(v)))
        .collect();
    ZeroSumSequence::new(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiset::Multiset;

    fn ms(e: &[u32]) -> Multiset {
        Multiset::from_elements(e).unwrap()
    }

    #[test]
    fn sequence_to_pair_examples() {
        let seq = ZeroSumSequence::new(vec![3, -2, 3, -2, -2]).unwrap();
        let p = sequence_to_pair(&seq).unwrap();
        assert_eq!((p.a(), p.b()), (&ms(&[3, 3]), &ms(&[2, 2, 2])));

        let seq = ZeroSumSequence::new(vec![1, -1]).unwrap();
        let p = sequence_to_pair(&seq).unwrap();
        assert_eq!((p.a(), p.b()), (&ms(&[1]), &ms(&[1])));
    }

    #[test]
    fn invalid_sequences() {
        assert_eq!(
            ZeroSumSequence::new(vec![1, 1, -1]),
            Err(SequenceError::NotZeroSum(1))
        );
        assert_eq!(
            ZeroSumSequence::new(vec![1, 0, -1]),
            Err(SequenceError::ContainsZero { index: 1 })
        );
        assert_eq!(ZeroSumSequence::new(vec![]), Err(SequenceError::Empty));
    }

    #[test]
    fn pair_to_sequence_examples() {
        let p = pair_canonical(ms(&[3, 3]), ms(&[2, 2, 2]));
        assert_eq!(pair_to_sequence(&p).unwrap().terms(), &[3, 3, -2, -2, -2]);

        let p = pair_canonical(ms(&[1]), ms(&[1]));
        assert_eq!(pair_to_sequence(&p).unwrap().terms(), &[1, -1]);

        let p = pair_canonical(ms(&[2, 1]), ms(&[2]));
        assert_eq!(pair_to_sequence(&p), Err(SequenceError::Unbalanced(3, 2)));
    }

    #[test]
    fn alphabet_bound() {
        let seq = ZeroSumSequence::new(vec![7, 7, 7, 1, 1, -6, -6, -6, -5]).unwrap();
        assert_eq!(seq.alphabet_bound(), 7);
    }
}
