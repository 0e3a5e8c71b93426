//! The derivation calculus on pairs.
//!
//! An `(a, b)`-derivation removes one copy of `a` from `A` and one copy of
//! `b` from `B`, then puts the difference `|a - b|` back on the side that
//! held the larger value. Applied to a k-irreducible pair of length greater
//! than two it yields another k-irreducible pair.
//!
//! Functions suffixed `_sides` keep the two sides in the order given, so
//! callers can tell which derived multiset came from which input. The
//! [`Pair`] variants canonicalize the result.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::multiset::{Multiset, MultisetError};
use crate::pair::{pair_canonical, Pair};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("value {value} is not an element of {side}")]
    NoSuchElement { side: Side, value: u32 },
    #[error("cannot derive on equal values ({0}, {0})")]
    EqualValues(u32),
    #[error("pair is too small: the derivation would empty a side")]
    TooSmall,
    #[error("plan needs {requested} copies of {value} from {side}, which holds {available}")]
    InfeasiblePlan {
        side: Side,
        value: u32,
        requested: u64,
        available: u32,
    },
    #[error("plan would empty a side")]
    EmptyResult,
    #[error("plan lists ({a},{b}) more than once")]
    DuplicateStep { a: u32, b: u32 },
    #[error("plan step ({a},{b}) has count 0")]
    ZeroCount { a: u32, b: u32 },
    #[error("step {index}: {source}")]
    ChainStep {
        index: usize,
        #[source]
        source: Box<DeriveError>,
    },
    #[error(transparent)]
    Multiset(#[from] MultisetError),
}

/// One `(a, b)` entry of a product derivation, applied `count` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanStep {
    pub a: u32,
    pub b: u32,
    pub count: u32,
}

/// A product derivation: distinct `(a, b)` keys with positive counts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DerivationPlan {
    steps: Vec<PlanStep>,
}

impl DerivationPlan {
    pub fn new(steps: Vec<PlanStep>) -> Result<Self, DeriveError> {
        let mut seen = BTreeSet::new();
        for s in &steps {
            if s.count == 0 {
                return Err(DeriveError::ZeroCount { a: s.a, b: s.b });
            }
            if !seen.insert((s.a, s.b)) {
                return Err(DeriveError::DuplicateStep { a: s.a, b: s.b });
            }
        }
        Ok(DerivationPlan { steps })
    }

    pub fn steps(&self) -> &[PlanStep] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Total number of single derivations the plan performs.
    pub fn total_count(&self) -> u64 {
        self.steps.iter().map(|s| s.count as u64).sum()
    }

    /// The plan as a flat list of single derivations, in plan order.
    pub fn unit_steps(&self) -> Vec<(u32, u32)> {
        self.steps
            .iter()
            .flat_map(|s| std::iter::repeat_n((s.a, s.b), s.count as usize))
            .collect()
    }

    /// Checks the row/column conditions: the plan never asks for more copies
    /// of a value than the side holds.
    pub fn check_feasible(&self, left: &Multiset, right: &Multiset) -> Result<(), DeriveError> {
        let mut need_a: BTreeMap<u32, u64> = BTreeMap::new();
        let mut need_b: BTreeMap<u32, u64> = BTreeMap::new();
        for s in &self.steps {
            *need_a.entry(s.a).or_default() += s.count as u64;
            *need_b.entry(s.b).or_default() += s.count as u64;
        }
        for (side, needs, ms) in [(Side::A, &need_a, left), (Side::B, &need_b, right)] {
            for (&value, &requested) in needs {
                let available = ms.multiplicity(value);
                if requested > available as u64 {
                    return Err(DeriveError::InfeasiblePlan {
                        side,
                        value,
                        requested,
                        available,
                    });
                }
            }
        }
        Ok(())
    }
}

fn remove(map: &mut BTreeMap<u32, u32>, value: u32, n: u32) {
    let c = map.get_mut(&value).expect("value present");
    *c -= n;
    if *c == 0 {
        map.remove(&value);
    }
}

fn add(map: &mut BTreeMap<u32, u32>, value: u32, n: u32) {
    *map.entry(value).or_insert(0) += n;
}

/// Single `(a, b)`-derivation with `a` taken from `left` and `b` from
/// `right`. Returns `(C, D)` with `C` derived from `left`.
pub fn derive_sides(
    left: &Multiset,
    right: &Multiset,
    a: u32,
    b: u32,
) -> Result<(Multiset, Multiset), DeriveError> {
    if !left.contains(a) {
        return Err(DeriveError::NoSuchElement {
            side: Side::A,
            value: a,
        });
    }
    if !right.contains(b) {
        return Err(DeriveError::NoSuchElement {
            side: Side::B,
            value: b,
        });
    }
    if a == b {
        return Err(DeriveError::EqualValues(a));
    }
    if left.cardinality() + right.cardinality() <= 2 {
        return Err(DeriveError::TooSmall);
    }
    let mut c = left.count_map();
    let mut d = right.count_map();
    remove(&mut c, a, 1);
    remove(&mut d, b, 1);
    if a > b {
        add(&mut c, a - b, 1);
    } else {
        add(&mut d, b - a, 1);
    }
    if c.is_empty() || d.is_empty() {
        return Err(DeriveError::TooSmall);
    }
    Ok((Multiset::from_count_map(&c)?, Multiset::from_count_map(&d)?))
}

/// Single `(a, b)`-derivation of a pair, with `a ∈ A` and `b ∈ B`.
pub fn derive(p: &Pair, a: u32, b: u32) -> Result<Pair, DeriveError> {
    let (c, d) = derive_sides(p.a(), p.b(), a, b)?;
    Ok(pair_canonical(c, d))
}

/// Product derivation drawing every consumed element from the original
/// sides. The result does not depend on the order of the plan's steps.
pub fn derive_product_sides(
    left: &Multiset,
    right: &Multiset,
    plan: &DerivationPlan,
) -> Result<(Multiset, Multiset), DeriveError> {
    if let Some(s) = plan.steps.iter().find(|s| s.a == s.b) {
        return Err(DeriveError::EqualValues(s.a));
    }
    plan.check_feasible(left, right)?;
    let mut c = left.count_map();
    let mut d = right.count_map();
    for s in &plan.steps {
        remove(&mut c, s.a, s.count);
        remove(&mut d, s.b, s.count);
    }
    for s in &plan.steps {
        if s.a > s.b {
            add(&mut c, s.a - s.b, s.count);
        } else {
            add(&mut d, s.b - s.a, s.count);
        }
    }
    if c.is_empty() || d.is_empty() {
        return Err(DeriveError::EmptyResult);
    }
    Ok((Multiset::from_count_map(&c)?, Multiset::from_count_map(&d)?))
}

pub fn derive_product(p: &Pair, plan: &DerivationPlan) -> Result<Pair, DeriveError> {
    let (c, d) = derive_product_sides(p.a(), p.b(), plan)?;
    Ok(pair_canonical(c, d))
}

/// Left fold of [`derive_sides`]. Later steps may consume values produced
/// by earlier ones.
pub fn derive_chain_sides(
    left: &Multiset,
    right: &Multiset,
    steps: &[(u32, u32)],
) -> Result<(Multiset, Multiset), DeriveError> {
    let mut sides = (left.clone(), right.clone());
    for (index, &(a, b)) in steps.iter().enumerate() {
        sides = derive_sides(&sides.0, &sides.1, a, b).map_err(|e| DeriveError::ChainStep {
            index,
            source: Box::new(e),
        })?;
    }
    Ok(sides)
}

pub fn derive_chain(p: &Pair, steps: &[(u32, u32)]) -> Result<Pair, DeriveError> {
    let (c, d) = derive_chain_sides(p.a(), p.b(), steps)?;
    Ok(pair_canonical(c, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irreducibility::is_irreducible;

    fn ms(e: &[u32]) -> Multiset {
        Multiset::from_elements(e).unwrap()
    }

    fn pair(a: &[u32], b: &[u32]) -> Pair {
        pair_canonical(ms(a), ms(b))
    }

    fn plan(steps: &[(u32, u32, u32)]) -> DerivationPlan {
        DerivationPlan::new(
            steps
                .iter()
                .map(|&(a, b, count)| PlanStep { a, b, count })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_derivations() {
        let p = pair(&[5, 5], &[2, 2, 2, 2, 2]);
        let q = derive(&p, 5, 2).unwrap();
        assert_eq!(q, pair(&[5, 3], &[2, 2, 2, 2]));
        let r = derive(&q, 3, 2).unwrap();
        assert_eq!(r, pair(&[5, 1], &[2, 2, 2]));
        assert_eq!(
            derive(&p, 3, 2),
            Err(DeriveError::NoSuchElement {
                side: Side::A,
                value: 3
            })
        );
        assert_eq!(
            derive(&pair(&[2], &[1, 1]), 2, 1).unwrap(),
            pair(&[1], &[1])
        );
    }

    #[test]
    fn derivation_on_larger_b_value() {
        // b > a puts the difference on the B side
        let (c, d) = derive_sides(&ms(&[2, 2, 2]), &ms(&[3, 3]), 2, 3).unwrap();
        assert_eq!(c, ms(&[2, 2]));
        assert_eq!(d, ms(&[3, 1]));
    }

    #[test]
    fn single_derivation_errors() {
        assert_eq!(
            derive(&pair(&[1], &[1]), 1, 1),
            Err(DeriveError::EqualValues(1))
        );
        assert_eq!(derive(&pair(&[2], &[1]), 2, 1), Err(DeriveError::TooSmall));
        // length 3 but B would become empty
        assert_eq!(
            derive(&pair(&[3, 3], &[1]), 3, 1),
            Err(DeriveError::TooSmall)
        );
        assert_eq!(
            derive(&pair(&[3, 3], &[2, 2, 2]), 3, 5),
            Err(DeriveError::NoSuchElement {
                side: Side::B,
                value: 5
            })
        );
    }

    #[test]
    fn product_worked_example() {
        let p = pair(&[7, 7, 7, 1, 1], &[6, 6, 6, 5]);
        let q = derive_product(&p, &plan(&[(7, 6, 2), (7, 5, 1)])).unwrap();
        assert_eq!(q, pair(&[2, 1, 1, 1, 1], &[6]));
        assert!(is_irreducible(&q));
        let (c, d) = derive_product_sides(p.a(), p.b(), &plan(&[(7, 6, 2), (7, 5, 1)])).unwrap();
        assert_eq!((c, d), (ms(&[2, 1, 1, 1, 1]), ms(&[6])));
    }

    #[test]
    fn empty_plan_is_identity() {
        let p = pair(&[7, 7, 7, 1, 1], &[6, 6, 6, 5]);
        assert_eq!(derive_product(&p, &DerivationPlan::default()).unwrap(), p);
        assert_eq!(derive_chain(&p, &[]).unwrap(), p);
    }

    #[test]
    fn product_errors() {
        let p = pair(&[5, 5], &[2, 2, 2, 2, 2]);
        assert_eq!(
            derive_product(&p, &plan(&[(5, 2, 3)])),
            Err(DeriveError::InfeasiblePlan {
                side: Side::A,
                value: 5,
                requested: 3,
                available: 2
            })
        );
        assert_eq!(
            derive_product(&p, &plan(&[(5, 5, 1)])),
            Err(DeriveError::EqualValues(5))
        );
        assert_eq!(
            derive_product(&pair(&[3, 3], &[1, 1]), &plan(&[(3, 1, 2)])),
            Err(DeriveError::EmptyResult)
        );
        let column = pair(&[5, 3], &[2, 2, 2, 2]);
        assert_eq!(
            derive_product(&column, &plan(&[(5, 2, 3), (3, 2, 1)])),
            Err(DeriveError::InfeasiblePlan {
                side: Side::A,
                value: 5,
                requested: 3,
                available: 1
            })
        );
        assert_eq!(
            DerivationPlan::new(vec![
                PlanStep {
                    a: 7,
                    b: 6,
                    count: 1
                },
                PlanStep {
                    a: 7,
                    b: 6,
                    count: 2
                }
            ]),
            Err(DeriveError::DuplicateStep { a: 7, b: 6 })
        );
        assert_eq!(
            DerivationPlan::new(vec![PlanStep {
                a: 7,
                b: 6,
                count: 0
            }]),
            Err(DeriveError::ZeroCount { a: 7, b: 6 })
        );
    }

    #[test]
    fn chain_order_matters() {
        let p = pair(&[5, 5], &[2, 2, 2, 2, 2]);
        assert_eq!(
            derive_chain(&p, &[(5, 2), (3, 2)]).unwrap(),
            pair(&[5, 1], &[2, 2, 2])
        );
        match derive_chain(&p, &[(3, 2), (5, 2)]) {
            Err(DeriveError::ChainStep { index: 0, source }) => assert_eq!(
                *source,
                DeriveError::NoSuchElement {
                    side: Side::A,
                    value: 3
                }
            ),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn product_cannot_consume_derived_values() {
        // chain (5,2),(3,2) works, but as a product the 3 is not an original element
        let p = pair(&[5, 5], &[2, 2, 2, 2, 2]);
        assert!(matches!(
            derive_product(&p, &plan(&[(5, 2, 1), (3, 2, 1)])),
            Err(DeriveError::InfeasiblePlan {
                side: Side::A,
                value: 3,
                ..
            })
        ));
    }
}
