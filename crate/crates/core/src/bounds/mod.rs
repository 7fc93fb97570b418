//! Bound arithmetic and certificates.
//!
//! Every bound here comes from the same mechanism: the leading `n × n` block
//! of a Hadamard matrix of order `k_n ≥ n` has spectral norm at most `√k_n`,
//! so `C_{2,2,n,n} ≤ √(k_n/n)`. The functions below evaluate that ratio,
//! chain it into the m-linear and switching-game bounds, and check it across
//! ranges of `n`.

mod certificate;
mod covering;
mod surd;
mod tables;

pub use certificate::{
    c22_certificate, exact_r_certificate, global_g_bound, r_lower_certificate, sqrt85_certificate, BoundCertificate, Claim, Evidence,
    Inputs, Method, Relation,
};
pub use covering::{cell_of, verify_sqrt85, CellHit, CoveringReport, TABLE_RANGE_END};
pub use surd::Surd;
pub use tables::{
    reference_tables, reproduce_tables, reproduce_tables_with, CBound, Cell, ReferenceTables,
    ReproduceOptions, Table1Row, Table3Row,
};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::hadamard::{sylvester, OrderRegistry};
use crate::norms::{injective_inf_norm, ksz_tensor};

/// `1/√2`, the lower bound for `G_n / n^{3/2}`. Stored as a reference only.
pub const LITTLEWOOD_LOWER: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// `C_{2,2,n,n} ≤ √(k_n / n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct C22Bound {
    pub n: u64,
    pub k_n: u64,
}

impl C22Bound {
    /// Exact `k_n / n`.
    pub fn ratio(&self) -> Ratio<i128> {
        Ratio::new(self.k_n as i128, self.n as i128)
    }

    pub fn value(&self) -> f64 {
        (self.k_n as f64 / self.n as f64).sqrt()
    }

    pub fn surd(&self) -> Surd {
        Surd::sqrt_of_ratio(self.k_n, self.n)
    }
}

pub fn c22_upper(n: u64) -> C22Bound {
    let n = n.max(1);
    C22Bound {
        n,
        k_n: OrderRegistry.known_order_at_least(n),
    }
}

/// `(k_n / n)^{(m−1)/2}`: the equal-dimension bound for `C_{∞,…,∞,n,…,n}`.
pub fn ksz_upper(m: u32, n: u64) -> Result<f64> {
    if m < 2 || n == 0 {
        return Err(Error::UnsupportedParameter(format!(
            "ksz bound needs m ≥ 2 and n ≥ 1, got m = {m}, n = {n}"
        )));
    }
    let k = OrderRegistry.known_order_at_least(n) as f64;
    Ok((k / n as f64).powf((m as f64 - 1.0) / 2.0))
}

/// Largest [`ksz_upper`] over `1 ≤ n ≤ max_n`, with the first maximizer.
pub fn ksz_upper_sup(m: u32, max_n: u64) -> Result<(f64, u64)> {
    let mut best = (0.0f64, 1u64);
    for n in 1..=max_n {
        let v = ksz_upper(m, n)?;
        if v > best.0 {
            best = (v, n);
        }
    }
    Ok(best)
}

/// Norm ceiling for the chain tensor built from Hadamard matrices of orders
/// `r_2, …, r_m` (truncated to `dims`): `√r_max · ∏_{k=2}^{m−1} √r_k`.
pub fn ksz_chain_norm_ceiling(orders: &[u64]) -> f64 {
    if orders.is_empty() {
        return 1.0;
    }
    let r_max = *orders.iter().max().unwrap() as f64;
    let middle: f64 = orders[..orders.len() - 1]
        .iter()
        .map(|&r| (r as f64).sqrt())
        .product();
    r_max.sqrt() * middle
}

/// Bound on the chain tensor's norm over `ℓ∞` balls for `dims` (any order;
/// sorted ascending internally) with `r_k = k_{n_k}`:
/// `(n_1 n_m)^{1/2} · √r_m · ∏_{k=2}^{m−1} √r_k`.
pub fn ksz_infinity_bound(dims: &[u64]) -> Result<f64> {
    if dims.len() < 2 || dims.contains(&0) {
        return Err(Error::UnsupportedParameter(format!(
            "need at least two positive dimensions, got {dims:?}"
        )));
    }
    let mut sorted = dims.to_vec();
    sorted.sort_unstable();
    let orders: Vec<u64> = sorted[1..]
        .iter()
        .map(|&n| OrderRegistry.known_order_at_least(n))
        .collect();
    let outer = ((sorted[0] * sorted[sorted.len() - 1]) as f64).sqrt();
    Ok(outer * ksz_chain_norm_ceiling(&orders))
}

/// `2^{(m+1)/2} · max_k √n_k · ∏_k √n_k`.
pub fn tkz1_bound(dims: &[u64]) -> f64 {
    let m = dims.len() as f64;
    let max = dims.iter().copied().max().unwrap_or(1) as f64;
    let prod: f64 = dims.iter().map(|&n| (n as f64).sqrt()).product();
    2f64.powf((m + 1.0) / 2.0) * max.sqrt() * prod
}

/// Numeric companion to [`tkz1_bound`] at small sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct Tkz1Check {
    pub dims: Vec<u64>,
    pub bound: f64,
    pub injective_norm: u64,
    /// `injective_norm / (max √n · ∏ √n)`.
    pub normalized: f64,
    /// `2^{(m+1)/2}`.
    pub constant: f64,
}

impl Tkz1Check {
    pub fn holds(&self) -> bool {
        self.normalized <= self.constant + 1e-12
    }
}

/// Builds the chain tensor from Sylvester matrices of order
/// `2^{t_k+1} ≥ n_k` (dims sorted ascending) and compares its injective norm
/// with the bound.
pub fn tkz1_check(dims: &[u64]) -> Result<Tkz1Check> {
    if dims.len() < 2 || dims.contains(&0) {
        return Err(Error::UnsupportedParameter(format!(
            "need at least two positive dimensions, got {dims:?}"
        )));
    }
    let mut sorted = dims.to_vec();
    sorted.sort_unstable();
    let mats = sorted[1..]
        .iter()
        .map(|&n| sylvester(n.next_power_of_two().trailing_zeros()))
        .collect::<Result<Vec<_>>>()?;
    let udims: Vec<usize> = sorted.iter().map(|&n| n as usize).collect();
    let t = ksz_tensor(&mats, &udims)?;
    let inj = injective_inf_norm(&t)?;
    let max = *sorted.last().unwrap() as f64;
    let denom = max.sqrt() * sorted.iter().map(|&n| (n as f64).sqrt()).product::<f64>();
    Ok(Tkz1Check {
        dims: sorted.clone(),
        bound: tkz1_bound(&sorted),
        injective_norm: inj,
        normalized: inj as f64 / denom,
        constant: 2f64.powf((sorted.len() as f64 + 1.0) / 2.0),
    })
}

/// Smallest integer `c ≥ (n² − n√k)/2`, computed exactly.
pub fn analytic_r_lower(n: u64, k: u64) -> u64 {
    let n2 = (n as i128) * (n as i128);
    let holds = |c: i128| {
        let s = n2 - 2 * c;
        s <= 0 || n2 * (k as i128) >= s * s
    };
    let approx = ((n * n) as f64 - n as f64 * (k as f64).sqrt()) / 2.0;
    let mut c = (approx.floor() as i128 - 2).max(0);
    while !holds(c) {
        c += 1;
    }
    while c > 0 && holds(c - 1) {
        c -= 1;
    }
    c as u64
}

/// Upper bound on `G_n / n^{3/2}` used by the global check, as an exact
/// square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GRatioBound {
    pub n: u64,
    /// Exact square of the bound.
    pub squared: Ratio<i128>,
    pub source: GRatioSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GRatioSource {
    /// `G_n` (or its upper bound) taken from the reference table.
    Table { g: u64 },
    /// `√(k_n/n)` transferred from `C_{2,2,n,n}`.
    Hadamard { k_n: u64 },
}

impl GRatioBound {
    pub fn value(&self) -> f64 {
        (*self.squared.numer() as f64 / *self.squared.denom() as f64).sqrt()
    }
}

/// Bound on `G_n / n^{3/2}`: table value for `n ≤ 20`, else `√(k_n/n)`.
pub fn g_ratio_upper(n: u64) -> GRatioBound {
    if let Some(row) = tables::table3_row(n) {
        match row.c {
            CBound::Ratio { g, .. } => {
                return GRatioBound {
                    n,
                    squared: Ratio::new((g * g) as i128, (n * n * n) as i128),
                    source: GRatioSource::Table { g },
                }
            }
            CBound::Hadamard => {}
        }
    }
    let c = c22_upper(n);
    GRatioBound {
        n,
        squared: c.ratio(),
        source: GRatioSource::Hadamard { k_n: c.k_n },
    }
}

/// `75√17/289`, the ceiling for `G_n / n^{3/2}`.
pub fn global_g_constant() -> Surd {
    Surd::new(Ratio::new(75, 289), 17)
}
