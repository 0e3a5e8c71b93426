//! Reduced-scale versions of the verification suites, runnable from the CLI.

use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};

use crate::allocation::{allocate_marbles, split_index};
use crate::derivation::derive_sides;
use crate::enumeration::{
    compute_ell, enumerate_irreducible, enumerate_multisets, extremal_pairs, is_unique_extremal,
    verify_theorem_bounds, EnumConfig, Mode,
};
use crate::irreducibility::{is_irreducible, is_irreducible_naive};
use crate::pair::{pair_canonical, Pair};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &'static str, failure: Option<String>, checked: u64) -> Self {
        match failure {
            None => CheckResult {
                name,
                passed: true,
                detail: format!("{checked} cases"),
            },
            Some(detail) => CheckResult {
                name,
                passed: false,
                detail,
            },
        }
    }
}

/// Every balanced pair with values at most `max_value` and common sum at
/// most `max_sum`, each unordered pair once.
pub fn balanced_pairs(max_value: u32, max_sum: u64) -> impl Iterator<Item = Pair> {
    (1..=max_sum).flat_map(move |s| {
        let list: Vec<_> = enumerate_multisets(max_value, s).collect();
        let n = list.len();
        (0..n).flat_map(move |i| {
            let list = list.clone();
            (i..n).map(move |j| pair_canonical(list[i].clone(), list[j].clone()))
        })
    })
}

/// Fast and naive irreducibility tests agree on every balanced pair in range.
pub fn oracle_equivalence(max_value: u32, max_sum: u64) -> (u64, Option<String>) {
    let mut checked = 0;
    for p in balanced_pairs(max_value, max_sum) {
        checked += 1;
        match is_irreducible_naive(&p) {
            Ok(naive) if naive == is_irreducible(&p) => {}
            Ok(naive) => {
                return (
                    checked,
                    Some(format!("disagreement on {p}: naive says {naive}")),
                )
            }
            Err(e) => return (checked, Some(format!("{p}: {e}"))),
        }
    }
    (checked, None)
}

/// Every single derivation of an irreducible pair of length greater than two
/// is irreducible and does not increase either maximum. Checks `samples`
/// random (pair, derivation) instances drawn from `pairs`.
pub fn derivation_preserves_irreducibility(
    pairs: &[Pair],
    samples: u64,
    rng: &mut impl Rng,
) -> (u64, Option<String>) {
    let pool: Vec<&Pair> = pairs.iter().filter(|p| p.length() > 2).collect();
    if pool.is_empty() {
        return (
            0,
            Some("no irreducible pairs of length > 2 to sample".into()),
        );
    }
    for n in 0..samples {
        let p = *pool.choose(rng).expect("nonempty");
        let a = p.a().runs().choose(rng).expect("nonempty").value;
        let b = p.b().runs().choose(rng).expect("nonempty").value;
        let fail = |why: String| (n + 1, Some(format!("({a},{b}) on {p}: {why}")));
        let (c, d) = match derive_sides(p.a(), p.b(), a, b) {
            Ok(sides) => sides,
            Err(e) => return fail(e.to_string()),
        };
        if c.max() > p.a().max() || d.max() > p.b().max() {
            return fail(format!("maximum increased: {c} | {d}"));
        }
        let q = pair_canonical(c, d);
        if !is_irreducible(&q) {
            return fail(format!("derived pair {q} is reducible"));
        }
    }
    (samples, None)
}

/// Random `(x, y)` with `y_1 <= Σx < Σy`.
pub fn random_split_instance(rng: &mut impl Rng) -> (Vec<u64>, Vec<u64>) {
    loop {
        let n = rng.random_range(1..=6);
        let m = rng.random_range(2..=8);
        let x: Vec<u64> = (0..n).map(|_| rng.random_range(1..=12)).collect();
        let y: Vec<u64> = (0..m).map(|_| rng.random_range(1..=12)).collect();
        let cap: u64 = x.iter().sum();
        if y[0] <= cap && y.iter().sum::<u64>() > cap {
            return (x, y);
        }
    }
}

pub fn allocation_invariants(samples: u64, rng: &mut impl Rng) -> (u64, Option<String>) {
    for n in 0..samples {
        let (x, y) = random_split_instance(rng);
        let result = split_index(&x, &y).and_then(|t| allocate_marbles(&x, &y, t));
        match result {
            Ok(r) if r.satisfies_invariants(&x, &y) => {}
            Ok(r) => return (n + 1, Some(format!("x={x:?} y={y:?}: invalid z={:?}", r.z))),
            Err(e) => return (n + 1, Some(format!("x={x:?} y={y:?}: {e}"))),
        }
    }
    (samples, None)
}

/// Brute and pruned enumeration produce identical output.
pub fn mode_agreement(k: u32) -> (u64, Option<String>) {
    let brute = enumerate_irreducible(&EnumConfig::new(k, Mode::Brute));
    let pruned = enumerate_irreducible(&EnumConfig::new(k, Mode::Pruned));
    match (brute, pruned) {
        (Ok(b), Ok(p)) if b == p => (b.len() as u64, None),
        (Ok(b), Ok(p)) => (
            0,
            Some(format!(
                "k={k}: brute {} pairs, pruned {}",
                b.len(),
                p.len()
            )),
        ),
        (Err(e), _) | (_, Err(e)) => (0, Some(e.to_string())),
    }
}

/// Brute-mode `ℓ(k)` with `sum_cap = k^2` equals `2k - 1`, every pair found
/// satisfies the length bounds, and the only pair of length `2k - 1` is the
/// extremal construction.
pub fn extremal_checks(k: u32) -> (u64, Option<String>) {
    let cfg = EnumConfig::new(k, Mode::Brute);
    let report = match compute_ell(&cfg) {
        Ok(r) => r,
        Err(e) => return (0, Some(e.to_string())),
    };
    if report.ell != 2 * k as u64 - 1 {
        return (
            0,
            Some(format!(
                "k={k}: ell={} (cap {})",
                report.ell, report.sum_cap
            )),
        );
    }
    let pairs = match enumerate_irreducible(&cfg) {
        Ok(p) => p,
        Err(e) => return (0, Some(e.to_string())),
    };
    if let Some(p) = pairs.iter().find(|p| !verify_theorem_bounds(p)) {
        return (0, Some(format!("k={k}: {p} violates the length bounds")));
    }
    match extremal_pairs(&cfg) {
        Ok(ex) if is_unique_extremal(k, &ex) => (pairs.len() as u64, None),
        Ok(ex) => (0, Some(format!("k={k}: extremal pairs {ex:?}"))),
        Err(e) => (0, Some(e.to_string())),
    }
}

/// Runs every reduced-scale suite with a fixed seed.
pub fn run_all(seed: u64) -> Vec<CheckResult> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();

    let (n, f) = oracle_equivalence(5, 10);
    out.push(CheckResult::new(
        "oracle equivalence (values <= 5, sum <= 10)",
        f,
        n,
    ));

    let mut pool = Vec::new();
    for k in 2..=5 {
        pool.extend(enumerate_irreducible(&EnumConfig::new(k, Mode::Brute)).unwrap_or_default());
    }
    let (n, f) = derivation_preserves_irreducibility(&pool, 1000, &mut rng);
    out.push(CheckResult::new(
        "single derivations preserve irreducibility (k <= 5)",
        f,
        n,
    ));

    let (n, f) = allocation_invariants(1000, &mut rng);
    out.push(CheckResult::new("marble allocation invariants", f, n));

    let mut checked = 0;
    let mut failure = None;
    for k in 1..=4 {
        let (n, f) = mode_agreement(k);
        checked += n;
        if f.is_some() {
            failure = f;
            break;
        }
    }
    out.push(CheckResult::new(
        "brute/pruned agreement (k <= 4)",
        failure,
        checked,
    ));

    let mut checked = 0;
    let mut failure = None;
    for k in 2..=4 {
        let (n, f) = extremal_checks(k);
        checked += n;
        if f.is_some() {
            failure = f;
            break;
        }
    }
    out.push(CheckResult::new(
        "ell(k) = 2k-1 with a unique extremal pair (k <= 4)",
        failure,
        checked,
    ));

    out
}
