//! Enumeration budgets, expressed as a number of free sign bits.
//!
//! Every exhaustive loop in the crate enumerates `2^bits` sign assignments.
//! The compiled-in caps can be lowered (never raised) by setting the
//! `GB_MAX_BITS` environment variable, which constrained CI machines use.

use crate::error::{Error, Result};

pub const ENV_MAX_BITS: &str = "GB_MAX_BITS";

/// Row assignments in `solve_i` / `solve_g` (n ≤ 30).
pub const SOLVE_BITS: u32 = 29;
/// Normalized grids in `exact_r` / `exact_g` (n ≤ 6).
pub const EXACT_BITS: u32 = 25;
/// Normalized grids when the long-running flag is set (n = 7).
pub const EXACT_LONG_BITS: u32 = 36;
/// Middle-argument sign assignments in `mixed_norm`.
pub const MIXED_BITS: u32 = 20;
/// Sign assignments of the first m − 1 arguments in `injective_inf_norm`.
pub const INJECTIVE_BITS: u32 = 22;

fn env_cap() -> Option<u32> {
    std::env::var(ENV_MAX_BITS).ok()?.trim().parse().ok()
}

/// Effective cap: the compiled default, lowered by `GB_MAX_BITS` when set.
pub fn effective_cap(default: u32) -> u32 {
    match env_cap() {
        Some(cap) => cap.min(default),
        None => default,
    }
}

pub(crate) fn check(what: &'static str, bits: u64, default: u32) -> Result<()> {
    let cap = effective_cap(default) as u64;
    if bits > cap {
        return Err(Error::SizeLimit {
            what,
            requested: bits,
            limit: cap,
        });
    }
    Ok(())
}
