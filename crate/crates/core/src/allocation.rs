//! Marble allocation: distributing colored marbles into capacitated bins.
//!
//! Bins have capacities `x_1..x_n`; color `j` has `y_j` marbles. Given a
//! split index `t` where the first `t` colors fit into the bins but the first
//! `t + 1` do not, the allocation places every marble of colors `1..t` and
//! then tops off the bins with color `t + 1`. Indices in this module are
//! zero-based in storage; `t` itself keeps its one-based meaning (the number
//! of colors that fit completely).

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AllocationError {
    #[error("capacities and color counts must be nonempty lists of positive integers")]
    InvalidInput,
    #[error("no split index: need y_1 <= sum(x) < sum(y)")]
    NoSplit,
    #[error("split index {given} is invalid; the split index is {expected}")]
    BadSplit { given: usize, expected: usize },
}

/// `z[i][j]` marbles of color `j + 1` in bin `i + 1`; the last column holds
/// color `t + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocationResult {
    pub t: usize,
    pub z: Vec<Vec<u64>>,
}

impl AllocationResult {
    /// Checks exact column sums for colors `1..t`, nonnegative residuals in
    /// column `t + 1` matching each bin's leftover capacity, and strict slack
    /// `y_{t+1} > sum_i z[i][t+1]`.
    pub fn satisfies_invariants(&self, x: &[u64], y: &[u64]) -> bool {
        let t = self.t;
        if t == 0 || t >= y.len() || self.z.len() != x.len() {
            return false;
        }
        if self.z.iter().any(|row| row.len() != t + 1) {
            return false;
        }
        for (j, &yj) in y.iter().enumerate().take(t) {
            if self.z.iter().map(|row| row[j]).sum::<u64>() != yj {
                return false;
            }
        }
        for (row, &xi) in self.z.iter().zip(x) {
            let placed: u64 = row[..t].iter().sum();
            if placed > xi || row[t] != xi - placed {
                return false;
            }
        }
        y[t] > self.z.iter().map(|row| row[t]).sum::<u64>()
    }
}

fn validate(x: &[u64], y: &[u64]) -> Result<(), AllocationError> {
    if x.is_empty() || y.is_empty() || x.contains(&0) || y.contains(&0) {
        return Err(AllocationError::InvalidInput);
    }
    Ok(())
}

/// The unique `t` with `1 <= t < |y|`, `y_1 + .. + y_t <= sum(x)` and
/// `y_1 + .. + y_{t+1} > sum(x)`.
pub fn split_index(x: &[u64], y: &[u64]) -> Result<usize, AllocationError> {
    validate(x, y)?;
    let capacity: u64 = x.iter().sum();
    if y[0] > capacity || y.iter().sum::<u64>() <= capacity {
        return Err(AllocationError::NoSplit);
    }
    let mut prefix = 0;
    for (j, &yj) in y.iter().enumerate() {
        prefix += yj;
        if prefix > capacity {
            return Ok(j);
        }
    }
    unreachable!("sum(y) > capacity")
}

/// Greedy fill: colors in order, each poured into bins in order up to
/// capacity; the residual capacity of each bin then takes color `t + 1`.
pub fn allocate_marbles(
    x: &[u64],
    y: &[u64],
    t: usize,
) -> Result<AllocationResult, AllocationError> {
    let expected = split_index(x, y)?;
    if t != expected {
        return Err(AllocationError::BadSplit { given: t, expected });
    }
    let mut z = vec![vec![0u64; t + 1]; x.len()];
    let mut room: Vec<u64> = x.to_vec();
    let mut bin = 0;
    for (j, &yj) in y.iter().enumerate().take(t) {
        let mut left = yj;
        while left > 0 {
            while room[bin] == 0 {
                bin += 1;
            }
            let put = left.min(room[bin]);
            z[bin][j] += put;
            room[bin] -= put;
            left -= put;
        }
    }
    for (row, r) in z.iter_mut().zip(&room) {
        row[t] = *r;
    }
    Ok(AllocationResult { t, z })
}
