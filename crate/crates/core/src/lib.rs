//! Irreducible zero-sum sequences over the integers.
//!
//! A pair `{A, B}` of multisets of positive integers is irreducible when
//! `ΣA = ΣB` and no proper nonempty submultisets `A' ⊂ A`, `B' ⊂ B` have
//! equal sums; equivalently, the zero-sum sequence made of the elements of
//! `A` and the negated elements of `B` has no proper nonempty zero-sum
//! subsequence. The crate decides irreducibility, runs the derivation
//! calculus on pairs, and enumerates k-irreducible pairs to compute the
//! maximum length `ℓ(k)` within explicit search caps.

pub mod allocation;
pub mod cache;
pub mod derivation;
pub mod enumeration;
pub mod formats;
pub mod irreducibility;
pub mod multiset;
pub mod pair;
pub mod selftest;
pub mod sequence;

pub use allocation::{allocate_marbles, split_index, AllocationError, AllocationResult};
pub use derivation::{
    derive, derive_chain, derive_chain_sides, derive_product, derive_product_sides, derive_sides,
    DerivationPlan, DeriveError, PlanStep, Side,
};
pub use enumeration::{
    compute_ell, enumerate_irreducible, enumerate_multisets, extremal_pairs, verify_theorem_bounds,
    EllReport, EnumConfig, EnumError, Mode,
};
pub use formats::{pair_to_json, parse_chain, parse_pair, parse_pair_json, parse_plan, ParseError};
pub use irreducibility::{
    is_irreducible, is_irreducible_naive, proper_subset_sums, reducibility_witness,
    IrreducibilityError, Reducibility, ReducibilityWitness, SumSet,
};
pub use multiset::{normalize, Measures, Multiset, MultisetError, Run};
pub use pair::{extremal_construction, pair_canonical, Pair, PairError};
pub use sequence::{pair_to_sequence, sequence_to_pair, SequenceError, ZeroSumSequence};

/// Version string recorded in cache entries.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
