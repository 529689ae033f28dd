//! The E₁ page of the spectral sequence converging to symplectic
//! cohomology of the complement `M = X \ D`, and the resulting bound on
//! `dim SH²(M)`, as functions of Betti numbers.
//!
//! Differentials of the spectral sequence are not modelled.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Degree ↦ Betti number; absent degrees are zero.
pub type BettiTable = BTreeMap<i64, u64>;

/// Reads `degree:dim` pairs separated by commas, e.g. `0:1,2:3`.
pub fn parse_betti_list(text: &str) -> Result<BettiTable> {
    let mut table = BettiTable::new();
    let text = text.trim();
    if text.is_empty() {
        return Ok(table);
    }
    for item in text.split(',') {
        let (deg, dim) = item
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected degree:dim, found {item:?}")))?;
        let deg: i64 = deg
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree {deg:?}")))?;
        let dim: u64 = dim
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension {dim:?}")))?;
        if table.insert(deg, dim).is_some() {
            return Err(Error::Parse(format!("degree {deg} listed twice")));
        }
    }
    Ok(table)
}

fn betti(t: &BettiTable, k: i64) -> u64 {
    t.get(&k).copied().unwrap_or(0)
}

/// `dim E₁^{pq}`: `b_q(M)` for `p = 0`, `b_{q+3p}(∂M)` for `p < 0`, and 0
/// for `p > 0`.
pub fn e1_dim(betti_m: &BettiTable, betti_bd: &BettiTable, p: i64, q: i64) -> u64 {
    match p {
        0 => betti(betti_m, q),
        p if p < 0 => q
            .checked_add(p.saturating_mul(3))
            .map_or(0, |d| betti(betti_bd, d)),
        _ => 0,
    }
}

/// `Σ_{p+q=k} dim E₁^{pq}`, an upper bound for `dim SH^k(M)`. Saturates
/// at `u64::MAX`.
pub fn e1_total(betti_m: &BettiTable, betti_bd: &BettiTable, k: i64) -> u64 {
    // with q = k − p the boundary degree is k + 2p
    let boundary: u64 = betti_bd
        .iter()
        .filter(|(d, _)| **d < k && (i128::from(**d) - i128::from(k)) % 2 == 0)
        .fold(0u64, |acc, (_, b)| acc.saturating_add(*b));
    betti(betti_m, k).saturating_add(boundary)
}

/// `b₂(M) + b₀(∂M)`, saturating.
pub fn sh2_bound(b2_m: u64, b0_bd: u64) -> u64 {
    b2_m.saturating_add(b0_bd)
}
