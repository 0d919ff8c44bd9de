//! Exact count tables M(m,n) and N(m,n) and the symmetrized moments built
//! on them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::binomial::gen_binomial;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::json::Exact;
use crate::partition::{crank_of_parts, fold_partitions, rank_of_parts};

/// Statistic value `m` to exact count, at a fixed `n`.
///
/// Wire format: `{"n": 5, "counts": [[-5, 1], [-3, 1], ...]}` sorted by `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "WireTable", try_from = "WireTable")]
pub struct CountTable {
    n: u32,
    counts: BTreeMap<i64, BigInt>,
}

#[derive(Serialize, Deserialize)]
struct WireTable {
    n: u32,
    counts: Vec<(i64, Exact)>,
}

impl From<CountTable> for WireTable {
    fn from(t: CountTable) -> Self {
        WireTable {
            n: t.n,
            counts: t.counts.into_iter().map(|(m, c)| (m, Exact(c))).collect(),
        }
    }
}

impl TryFrom<WireTable> for CountTable {
    type Error = Error;

    fn try_from(w: WireTable) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for (m, c) in w.counts {
            if counts.insert(m, c.0).is_some() {
                return Err(Error::invalid(format!(
                    "duplicate statistic value {m} in table"
                )));
            }
        }
        Ok(CountTable::new(w.n, counts))
    }
}

impl CountTable {
    /// Zero entries are dropped so equal tables compare equal.
    pub fn new(n: u32, counts: BTreeMap<i64, BigInt>) -> Self {
        let counts = counts.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        CountTable { n, counts }
    }

    pub fn from_pairs(n: u32, pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut counts = BTreeMap::new();
        for (m, c) in pairs {
            *counts.entry(m).or_insert_with(BigInt::zero) += c;
        }
        Self::new(n, counts)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Count at statistic value `m`; zero when absent.
    pub fn get(&self, m: i64) -> BigInt {
        self.counts.get(&m).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.counts.iter().map(|(m, c)| (*m, c))
    }

    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    /// Largest `|m|` with a nonzero count.
    pub fn max_abs(&self) -> i64 {
        self.counts.keys().map(|m| m.abs()).max().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.counts.iter().all(|(m, c)| self.get(-m) == *c)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.counts.values().all(|c| !c.is_negative())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// `m,count` CSV with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,count\n");
        for (m, c) in &self.counts {
            let _ = writeln!(out, "{m},{c}");
        }
        out
    }
}

fn require_positive(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    Ok(())
}

fn one_convention() -> CountTable {
    CountTable::from_pairs(1, [(-1, 1), (0, -1), (1, 1)])
}

fn tally(n: u32, exec: Exec, stat: fn(&[u32]) -> Result<i64>) -> CountTable {
    let span = n as usize;
    let hist = fold_partitions(
        n,
        exec,
        || vec![0u64; 2 * span + 1],
        |acc, parts| {
            // n >= 1 here, so parts is nonempty and the statistic is defined.
            let m = stat(parts).expect("nonempty partition");
            acc[(m + span as i64) as usize] += 1;
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    let counts = hist
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(i, c)| (i as i64 - span as i64, BigInt::from(c)))
        .collect();
    CountTable::new(n, counts)
}

/// M(m, n) by streaming every partition of `n`. For `n = 1` returns the
/// signed convention `{-1: 1, 0: -1, 1: 1}`.
pub fn crank_counts(n: u32) -> Result<CountTable> {
    crank_counts_with(n, Exec::default())
}

pub fn crank_counts_with(n: u32, exec: Exec) -> Result<CountTable> {
    require_positive(n)?;
    if n == 1 {
        return Ok(one_convention());
    }
    Ok(tally(n, exec, crank_of_parts))
}

/// N(m, n) by streaming every partition of `n`.
pub fn rank_counts(n: u32) -> Result<CountTable> {
    rank_counts_with(n, Exec::default())
}

pub fn rank_counts_with(n: u32, exec: Exec) -> Result<CountTable> {
    require_positive(n)?;
    Ok(tally(n, exec, rank_of_parts))
}

/// M(m, n) without enumerating partitions.
///
/// A partition with no ones contributes its largest part `m`, counted by
/// partitions of `n - m` into parts in `[2, m]`. A partition with `M >= 1`
/// ones and `j` parts exceeding `M` contributes `j - M`; its non-one parts
/// split into parts in `[2, M]` and exactly `j` parts of size at least
/// `M + 1`. Both factors come from small tables, so the cost is polynomial
/// in `n` rather than proportional to p(n).
pub fn crank_counts_recurrence(n: u32) -> Result<CountTable> {
    require_positive(n)?;
    if n == 1 {
        return Ok(one_convention());
    }
    let overflow = || Error::Overflow(n);
    let size = n as usize + 1;

    // exact[z][j]: partitions of z into exactly j parts.
    let mut exact = vec![vec![0u128; size]; size];
    exact[0][0] = 1;
    for z in 1..size {
        for j in 1..=z {
            exact[z][j] = exact[z - 1][j - 1]
                .checked_add(exact[z - j][j])
                .ok_or_else(overflow)?;
        }
    }
    // bounded[cap][x]: partitions of x into parts in [2, cap].
    let mut bounded = vec![vec![0u128; size]; size];
    bounded[0][0] = 1;
    bounded[1][0] = 1;
    for cap in 2..size {
        for x in 0..size {
            let mut v = bounded[cap - 1][x];
            if x >= cap {
                v = v.checked_add(bounded[cap][x - cap]).ok_or_else(overflow)?;
            }
            bounded[cap][x] = v;
        }
    }

    let n = n as usize;
    let mut counts: BTreeMap<i64, u128> = BTreeMap::new();
    for largest in 2..=n {
        let c = bounded[largest][n - largest];
        if c > 0 {
            *counts.entry(largest as i64).or_default() += c;
        }
    }
    for ones in 1..=n {
        let rest = n - ones;
        for j in 0..=rest / (ones + 1) {
            let mut c: u128 = 0;
            for x in 0..=rest - j * (ones + 1) {
                let small = bounded[ones][x];
                if small == 0 {
                    continue;
                }
                let big = exact[rest - x - j * ones][j];
                let term = small.checked_mul(big).ok_or_else(overflow)?;
                c = c.checked_add(term).ok_or_else(overflow)?;
            }
            if c > 0 {
                let m = j as i64 - ones as i64;
                let slot = counts.entry(m).or_default();
                *slot = slot.checked_add(c).ok_or_else(overflow)?;
            }
        }
    }
    let counts = counts
        .into_iter()
        .map(|(m, c)| (m, BigInt::from(c)))
        .collect();
    Ok(CountTable::new(n as u32, counts))
}

/// p(n) by the coin-change recurrence over part sizes.
pub fn partition_count(n: u32) -> BigInt {
    let n = n as usize;
    let mut ways = vec![BigInt::zero(); n + 1];
    ways[0] = BigInt::from(1);
    for part in 1..=n {
        for total in part..=n {
            let add = ways[total - part].clone();
            ways[total] += add;
        }
    }
    ways.swap_remove(n)
}

/// `Σ_m C(m + ⌊(k-1)/2⌋, k) · table(m)` with the generalized binomial.
pub fn symmetrized_moment(k: u32, table: &CountTable) -> BigInt {
    let shift = i64::from(k.saturating_sub(1) / 2);
    table
        .iter()
        .map(|(m, c)| gen_binomial(m + shift, k) * c)
        .sum()
}

/// μ_k(n), the k-th symmetrized crank moment.
pub fn crank_moment(k: u32, n: u32) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::invalid("moment order k must be at least 1"));
    }
    Ok(symmetrized_moment(k, &crank_counts(n)?))
}

/// η_k(n), the k-th symmetrized rank moment.
pub fn rank_moment(k: u32, n: u32) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::invalid("moment order k must be at least 1"));
    }
    Ok(symmetrized_moment(k, &rank_counts(n)?))
}
