//! Range check of `C_{2,2,n,n} ≤ √(8/5)`.
//!
//! Orders up to 664 are checked directly against `k_n`. Every `n ≥ 665` lies
//! in exactly one cell `A_{m,k} = {8^m k + 1, …, 8^m (k+1)}` with
//! `8 ≤ k ≤ 63`; the right end `8^m (k+1)` is a known Hadamard order, so
//! `k_n / n ≤ (k+1)/k ≤ 9/8` inside the cell.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hadamard::OrderRegistry;

/// Last order handled by the direct table rather than the cells.
pub const TABLE_RANGE_END: u64 = OrderRegistry::BASE_MAX_ORDER;

/// Number of `n` in the checked range that fell into cell `A_{m,k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CellHit {
    pub m: u32,
    pub k: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringReport {
    pub range_checked: (u64, u64),
    pub cells: Vec<CellHit>,
    /// Largest `k_n / n` over the range, as a decimal.
    pub max_ratio: f64,
    /// Largest `k_n / n` as a reduced fraction `(numerator, denominator)`.
    pub max_ratio_exact: (u64, u64),
    /// Smallest `n` attaining the maximum.
    pub argmax_n: u64,
    /// How many `n` attain the maximum.
    pub argmax_count: u64,
}

impl CoveringReport {
    /// Whether the maximum is `8/5`, attained at `n = 5` only.
    pub fn is_sharp_at_five(&self) -> bool {
        self.max_ratio_exact == (8, 5) && self.argmax_n == 5 && self.argmax_count == 1
    }
}

/// The cell `(m, k)` containing `n`, or `None` for `n ≤ 664`.
pub fn cell_of(n: u64) -> Option<(u32, u64)> {
    if n <= TABLE_RANGE_END {
        return None;
    }
    let mut m = 1u32;
    let mut scale = 8u64;
    while n > 64 * scale {
        m += 1;
        scale *= 8;
    }
    let k = n.div_ceil(scale) - 1;
    debug_assert!((8..=63).contains(&k));
    Some((m, k))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Checks `k_n / n ≤ 8/5` for every `1 ≤ n ≤ max_n`, and cell membership
/// with `k_n ≤ 8^m (k+1)` for every `n ≥ 665`.
pub fn verify_sqrt85(max_n: u64) -> Result<CoveringReport> {
    if max_n == 0 {
        return Err(Error::UnsupportedParameter("covering range must be non-empty".into()));
    }
    let reg = OrderRegistry;
    let mut cells: Vec<CellHit> = Vec::new();
    let (mut best_k, mut best_n, mut ties) = (1u64, 1u64, 0u64);
    for n in 1..=max_n {
        let k_n = reg.known_order_at_least(n);
        if 5 * k_n as u128 > 8 * n as u128 {
            return Err(Error::Counterexample {
                n,
                detail: format!("k_n = {k_n} gives k_n/n > 8/5"),
            });
        }
        if let Some((m, k)) = cell_of(n) {
            let right = 8u64.pow(m) * (k + 1);
            if !reg.is_known(right) || k_n > right || !(8..=63).contains(&k) {
                return Err(Error::Counterexample {
                    n,
                    detail: format!("cell A_({m},{k}) right end {right} does not bound k_n = {k_n}"),
                });
            }
            // (k+1)/k ≤ 9/8
            if 8 * (k + 1) > 9 * k {
                return Err(Error::Counterexample {
                    n,
                    detail: format!("cell ratio (k+1)/k exceeds 9/8 for k = {k}"),
                });
            }
            match cells.last_mut() {
                Some(c) if c.m == m && c.k == k => c.count += 1,
                _ => cells.push(CellHit { m, k, count: 1 }),
            }
        }
        // Compare k_n / n with best_k / best_n.
        let lhs = k_n as u128 * best_n as u128;
        let rhs = best_k as u128 * n as u128;
        if lhs > rhs {
            best_k = k_n;
            best_n = n;
            ties = 1;
        } else if lhs == rhs {
            ties += 1;
        }
    }
    let g = gcd(best_k, best_n);
    Ok(CoveringReport {
        range_checked: (1, max_n),
        cells,
        max_ratio: best_k as f64 / best_n as f64,
        max_ratio_exact: (best_k / g, best_n / g),
        argmax_n: best_n,
        argmax_count: ties,
    })
}
