//! Counting k-marked Dyson symbols by crank profile, balance profile,
//! strictness and full crank.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{enumerate_marked_with, MarkedDysonSymbol};
use crate::binomial::gen_binomial;
use crate::dyson::f1_table;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fullcrank::full_crank_from_stats;
use crate::table::CountTable;

/// Fiber sizes of one enumeration of k-marked symbols of `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MarkedCensus {
    pub k: usize,
    pub n: u32,
    pub total: u64,
    /// `(c_1, …, c_k)` → count.
    pub by_cranks: BTreeMap<Vec<i64>, u64>,
    /// `((c_1, …, c_k), (b_1, …, b_{k-1}))` → count.
    pub by_cranks_balances: BTreeMap<(Vec<i64>, Vec<u32>), u64>,
    /// Strict symbols only, `(c_1, …, c_k)` → count.
    pub strict_by_cranks: BTreeMap<Vec<i64>, u64>,
    /// Full crank → count.
    pub by_full_crank: BTreeMap<i64, u64>,
}

impl MarkedCensus {
    pub fn build(k: usize, n: u32) -> Result<Self> {
        Self::build_with(k, n, Exec::default())
    }

    pub fn build_with(k: usize, n: u32, exec: Exec) -> Result<Self> {
        let symbols = enumerate_marked_with(k, n, exec)?;
        Ok(Self::from_symbols(k, n, &symbols))
    }

    pub fn from_symbols(k: usize, n: u32, symbols: &[MarkedDysonSymbol]) -> Self {
        let mut census = MarkedCensus {
            k,
            n,
            ..Default::default()
        };
        for eta in symbols {
            let st = eta.statistics();
            let mut balances = st.balances.clone();
            balances.pop();
            census.total += 1;
            *census.by_cranks.entry(st.cranks.clone()).or_default() += 1;
            if eta.is_strict() {
                *census
                    .strict_by_cranks
                    .entry(st.cranks.clone())
                    .or_default() += 1;
            }
            *census
                .by_full_crank
                .entry(full_crank_from_stats(k, &st))
                .or_default() += 1;
            *census
                .by_cranks_balances
                .entry((st.cranks, balances))
                .or_default() += 1;
        }
        census
    }

    pub fn fk(&self, cranks: &[i64]) -> u64 {
        self.by_cranks.get(cranks).copied().unwrap_or(0)
    }

    pub fn fk_with_balance(&self, cranks: &[i64], balances: &[u32]) -> u64 {
        self.by_cranks_balances
            .get(&(cranks.to_vec(), balances.to_vec()))
            .copied()
            .unwrap_or(0)
    }

    pub fn fk_strict(&self, cranks: &[i64]) -> u64 {
        self.strict_by_cranks.get(cranks).copied().unwrap_or(0)
    }

    pub fn full_crank(&self, m: i64) -> u64 {
        self.by_full_crank.get(&m).copied().unwrap_or(0)
    }
}

fn check_profile(k: usize, cranks: &[i64]) -> Result<()> {
    if cranks.len() != k || k == 0 {
        return Err(Error::invalid(format!(
            "crank profile of length {} for k = {k}",
            cranks.len()
        )));
    }
    Ok(())
}

/// F_k(m_1, …, m_k; n) by enumeration.
pub fn count_fk(cranks: &[i64], n: u32) -> Result<u64> {
    let k = cranks.len();
    check_profile(k, cranks)?;
    let all = enumerate_marked_with(k, n, Exec::default())?;
    Ok(all.iter().filter(|eta| eta.cranks() == cranks).count() as u64)
}

/// F_k(m_1, …, m_k, t_1, …, t_{k-1}; n) by enumeration.
pub fn count_fk_with_balance(cranks: &[i64], balances: &[u32], n: u32) -> Result<u64> {
    let k = cranks.len();
    check_profile(k, cranks)?;
    if k < 2 || balances.len() + 1 != k {
        return Err(Error::invalid(
            "balance profile needs k ≥ 2 and k - 1 entries",
        ));
    }
    let all = enumerate_marked_with(k, n, Exec::default())?;
    Ok(all
        .iter()
        .filter(|eta| {
            let st = eta.statistics();
            st.cranks == cranks && st.balances[..k - 1] == *balances
        })
        .count() as u64)
}

/// F_k^s(m_1, …, m_k; n): strict symbols only.
pub fn count_fk_strict(cranks: &[i64], n: u32) -> Result<u64> {
    let k = cranks.len();
    check_profile(k, cranks)?;
    if k < 2 {
        return Err(Error::invalid("strict counts need k ≥ 2"));
    }
    let all = enumerate_marked_with(k, n, Exec::default())?;
    Ok(all
        .iter()
        .filter(|eta| eta.is_strict() && eta.cranks() == cranks)
        .count() as u64)
}

/// `Σ_{t_1, …, t_{k-1} ≥ 0} F_1(Σ|m_i| + 2Σt_i + k - 1; n)`, the closed
/// expression of F_k through Dyson-symbol counts.
pub fn profile_count_formula(cranks: &[i64], n: u32) -> Result<BigInt> {
    check_profile(cranks.len(), cranks)?;
    Ok(profile_count_formula_from(&f1_table(n)?, cranks))
}

/// As [`profile_count_formula`] with a precomputed F_1 table. Only finitely
/// many terms are nonzero since `|crank| ≤ n`.
pub fn profile_count_formula_from(f1: &CountTable, cranks: &[i64]) -> BigInt {
    let k = cranks.len() as i64;
    let base: i64 = cranks.iter().map(|m| m.abs()).sum::<i64>() + k - 1;
    let reach = f1.max_abs();
    let mut total = BigInt::zero();
    let mut t = 0i64;
    while base + 2 * t <= reach {
        // compositions of t into k - 1 nonnegative parts
        let ways = if k == 1 {
            BigInt::from(u8::from(t == 0))
        } else {
            gen_binomial(t + k - 2, (k - 2) as u32)
        };
        total += ways * f1.get(base + 2 * t);
        t += 1;
        if k == 1 {
            break;
        }
    }
    total
}
