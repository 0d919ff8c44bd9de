//! k-marked Dyson symbols.
//!
//! A k-marked symbol is a list of `k` partition pairs ("vectors") separated
//! by markers `p_{k-1} ≥ … ≥ p_1 ≥ p_0 = 1`. Levels are numbered from 1
//! (lowest parts) to `k` (top). Internally level `i` lives at index `i - 1`
//! and `p_i` at index `i - 1` of the marker list, while the JSON form lists
//! vectors and markers top-down, the way the symbol is usually written:
//!
//! ```text
//! {"k": 3,
//!  "vectors": [level 3, level 2, level 1],
//!  "p": [p_2, p_1]}
//! ```

mod census;
mod enumerate;
mod merge;
mod mirror;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dyson::DysonSymbol;
use crate::error::{Error, Result};
use crate::partition::Partition;

pub use census::{
    count_fk, count_fk_strict, count_fk_with_balance, profile_count_formula,
    profile_count_formula_from, MarkedCensus,
};
pub use enumerate::{enumerate_marked, enumerate_marked_with};
pub use merge::{phi, phi_inverse};
pub use mirror::mirror;

/// One vector `(α^(i), β^(i))` of a marked symbol.
pub type Pair = DysonSymbol;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "WireMarked", try_from = "WireMarked")]
pub struct MarkedDysonSymbol {
    levels: Vec<Pair>,
    markers: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct WireMarked {
    k: usize,
    vectors: Vec<Pair>,
    p: Vec<u32>,
}

impl From<MarkedDysonSymbol> for WireMarked {
    fn from(m: MarkedDysonSymbol) -> Self {
        WireMarked {
            k: m.k(),
            vectors: m.levels.into_iter().rev().collect(),
            p: m.markers.into_iter().rev().collect(),
        }
    }
}

impl TryFrom<WireMarked> for MarkedDysonSymbol {
    type Error = Error;

    fn try_from(w: WireMarked) -> Result<Self> {
        if w.vectors.len() != w.k {
            return Err(Error::InvalidMarkedSymbol(format!(
                "k = {} but {} vectors",
                w.k,
                w.vectors.len()
            )));
        }
        MarkedDysonSymbol::new(
            w.vectors.into_iter().rev().collect(),
            w.p.into_iter().rev().collect(),
        )
    }
}

/// Per-symbol statistics. Vectors are indexed by level, index 0 = level 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statistics {
    /// `c_i = ℓ(α^(i)) - ℓ(β^(i))`.
    pub cranks: Vec<i64>,
    /// `b_i`, with `b_k = 0`.
    pub balances: Vec<u32>,
    pub large: Vec<u32>,
    pub small: Vec<u32>,
    /// Σ large lengths.
    pub l: u32,
    /// Σ small lengths.
    pub s: u32,
    /// Σ balanced numbers.
    pub d: u32,
}

impl MarkedDysonSymbol {
    /// `levels[i]` is level `i + 1`; `markers[i]` is `p_{i+1}`. Checks only
    /// the shape (`k ≥ 1`, `k - 1` markers); see [`MarkedDysonSymbol::is_valid`].
    pub fn new(levels: Vec<Pair>, markers: Vec<u32>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidMarkedSymbol("k must be at least 1".into()));
        }
        if markers.len() + 1 != levels.len() {
            return Err(Error::InvalidMarkedSymbol(format!(
                "{} levels need {} markers, got {}",
                levels.len(),
                levels.len() - 1,
                markers.len()
            )));
        }
        Ok(MarkedDysonSymbol { levels, markers })
    }

    /// Convenience constructor from raw parts, levels listed bottom-up.
    pub fn from_parts(levels: &[(&[u32], &[u32])], markers: &[u32]) -> Result<Self> {
        let levels = levels
            .iter()
            .map(|(a, b)| DysonSymbol::from_parts(a, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(levels, markers.to_vec())
    }

    pub(crate) fn from_raw(levels: Vec<Pair>, markers: Vec<u32>) -> Self {
        debug_assert_eq!(levels.len(), markers.len() + 1);
        MarkedDysonSymbol { levels, markers }
    }

    pub fn k(&self) -> usize {
        self.levels.len()
    }

    /// Level `i`, 1-based.
    pub fn level(&self, i: usize) -> &Pair {
        &self.levels[i - 1]
    }

    pub fn levels(&self) -> &[Pair] {
        &self.levels
    }

    /// `p_1, …, p_{k-1}`.
    pub fn markers(&self) -> &[u32] {
        &self.markers
    }

    /// `p_i` for `0 ≤ i ≤ k - 1`, with `p_0 = 1`.
    pub fn marker(&self, i: usize) -> u32 {
        if i == 0 {
            1
        } else {
            self.markers[i - 1]
        }
    }

    pub(crate) fn replace_level(&self, i: usize, pair: Pair) -> Self {
        let mut out = self.clone();
        out.levels[i - 1] = pair;
        out
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    /// The structural conditions, reporting the first one violated.
    pub fn check(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidMarkedSymbol(msg));
        let k = self.k();
        if self.markers.contains(&0) || self.markers.windows(2).any(|w| w[0] > w[1]) {
            return fail(format!(
                "markers must satisfy 1 ≤ p_1 ≤ … ≤ p_(k-1): {:?}",
                self.markers
            ));
        }
        for i in 1..k {
            let (lo, hi) = (self.marker(i - 1), self.marker(i));
            let pair = self.level(i);
            let inside = |p: &Partition| p.parts().iter().all(|&x| lo <= x && x <= hi);
            if !inside(&pair.alpha) || !inside(&pair.beta) {
                return fail(format!("level {i} has a part outside [{lo}, {hi}]"));
            }
        }
        let top = self.level(k);
        let floor = self.marker(k - 1);
        let above = |p: &Partition| p.parts().iter().all(|&x| x >= floor);
        if !above(&top.alpha) || !above(&top.beta) {
            return fail(format!("level {k} has a part below {floor}"));
        }
        let a = top.alpha.parts();
        let b = top.beta.parts();
        let ok = match (a.len(), b.len()) {
            (1, _) => a[0] == floor,
            (la, _) if la > 1 => a[0] == a[1],
            (0, 1) => b[0] == floor,
            (0, lb) if lb >= 2 => b[0] == b[1],
            _ => {
                // Both top partitions empty: p_{k-1} must be the largest
                // first part one level down, where an empty level counts
                // as its lower bound p_{k-2}.
                k >= 2 && {
                    let below = self.level(k - 1);
                    let max = below.alpha.largest().max(below.beta.largest());
                    max.unwrap_or(self.marker(k - 2)) == floor
                }
            }
        };
        if !ok {
            return fail(format!("top level {top} violates its shape condition"));
        }
        Ok(())
    }

    pub fn cranks(&self) -> Vec<i64> {
        self.levels.iter().map(|p| p.crank()).collect()
    }

    /// True when every level below the top is a strict bipartition.
    pub fn is_strict(&self) -> bool {
        self.first_non_strict_level().is_none()
    }

    pub(crate) fn first_non_strict_level(&self) -> Option<usize> {
        let k = self.k();
        (1..k).find(|&i| !is_strict_bipartition(self.level(i)))
    }

    pub fn statistics(&self) -> Statistics {
        let k = self.k();
        let mut st = Statistics {
            cranks: Vec::with_capacity(k),
            balances: Vec::with_capacity(k),
            large: Vec::with_capacity(k),
            small: Vec::with_capacity(k),
            l: 0,
            s: 0,
            d: 0,
        };
        for (idx, pair) in self.levels.iter().enumerate() {
            let (la, lb) = (pair.alpha.len() as u32, pair.beta.len() as u32);
            let b = if idx + 1 == k {
                0
            } else if la >= lb {
                balanced_parts(&pair.alpha, &pair.beta)
            } else {
                balanced_parts(&pair.beta, &pair.alpha)
            };
            st.cranks.push(i64::from(la) - i64::from(lb));
            st.balances.push(b);
            st.large.push(la.max(lb));
            st.small.push(la.min(lb));
            st.l += la.max(lb);
            st.s += la.min(lb);
            st.d += b;
        }
        st
    }

    /// `Σ(|α^(i)| + |β^(i)|) + Σ p_i + (l + D + k - 1)(s - D)`.
    pub fn weight(&self) -> u32 {
        let st = self.statistics();
        let sizes: u32 = self
            .levels
            .iter()
            .map(|p| p.alpha.weight() + p.beta.weight())
            .sum();
        let markers: u32 = self.markers.iter().sum();
        // D counts balanced parts of the shorter partitions, so s ≥ D.
        sizes + markers + (st.l + st.d + self.k() as u32 - 1) * (st.s - st.d)
    }
}

impl fmt::Display for MarkedDysonSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, pair) in self.levels.iter().enumerate().rev() {
            write!(f, "{} / {}", pair.alpha, pair.beta)?;
            if i > 0 {
                write!(f, " ‖{}‖ ", self.markers[i - 1])?;
            }
        }
        Ok(())
    }
}

pub fn validate_marked(eta: &MarkedDysonSymbol) -> bool {
    eta.is_valid()
}

pub fn statistics(eta: &MarkedDysonSymbol) -> Result<Statistics> {
    eta.check()?;
    Ok(eta.statistics())
}

pub fn weight(eta: &MarkedDysonSymbol) -> Result<u32> {
    eta.check()?;
    Ok(eta.weight())
}

/// `α_j > β_j` for every `j ≤ ℓ(β)`.
pub fn is_strict_bipartition(pair: &Pair) -> bool {
    let (a, b) = (pair.alpha.parts(), pair.beta.parts());
    a.len() >= b.len() && a.iter().zip(b).all(|(x, y)| x > y)
}

/// Number of balanced parts of `short` relative to `long`.
///
/// Scanning `short` left to right, a part `x` is balanced when the number
/// of parts of `long` exceeding `x` equals the number of unbalanced parts
/// seen so far.
pub fn balanced_count(long: &Partition, short: &Partition) -> Result<u32> {
    if long.len() < short.len() {
        return Err(Error::LengthOrder {
            long: long.len(),
            short: short.len(),
        });
    }
    Ok(balanced_parts(long, short))
}

fn balanced_parts(long: &Partition, short: &Partition) -> u32 {
    let mut unbalanced = 0usize;
    let mut balanced = 0u32;
    for &x in short.parts() {
        if long.count_greater(x) == unbalanced {
            balanced += 1;
        } else {
            unbalanced += 1;
        }
    }
    balanced
}
