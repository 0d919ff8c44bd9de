//! Dyson symbols: pairs `(α, β)` of partitions in bijection with ordinary
//! partitions, whose crank `ℓ(α) - ℓ(β)` is the negated partition crank.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::partition::{enumerate_partitions_with, Partition, PartitionStream};

/// A pair `(α, β)`. Construction does not validate; see [`DysonSymbol::is_valid`].
///
/// Wire format is `{"alpha": [...], "beta": [...]}`; the weight is always
/// recomputed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DysonSymbol {
    pub alpha: Partition,
    pub beta: Partition,
}

impl DysonSymbol {
    pub fn new(alpha: Partition, beta: Partition) -> Self {
        DysonSymbol { alpha, beta }
    }

    pub fn from_parts(alpha: &[u32], beta: &[u32]) -> Result<Self> {
        Ok(DysonSymbol::new(
            Partition::new(alpha.to_vec())?,
            Partition::new(beta.to_vec())?,
        ))
    }

    /// The three shape conditions on `α` (with `β` when `α` is empty).
    pub fn is_valid(&self) -> bool {
        let a = self.alpha.parts();
        let b = self.beta.parts();
        match a.len() {
            0 => b.len() >= 2 && b[0] == b[1],
            1 => a[0] == 1,
            _ => a[0] == a[1],
        }
    }

    /// `|α| + |β| + ℓ(α)ℓ(β)`.
    pub fn weight(&self) -> u32 {
        self.alpha.weight() + self.beta.weight() + (self.alpha.len() * self.beta.len()) as u32
    }

    /// `ℓ(α) - ℓ(β)`.
    pub fn crank(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    fn ensure_valid(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidDysonSymbol(self.to_string()))
        }
    }
}

impl fmt::Display for DysonSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} | {}]", self.alpha, self.beta)
    }
}

pub fn validate_dyson(s: &DysonSymbol) -> bool {
    s.is_valid()
}

pub fn dyson_crank(s: &DysonSymbol) -> Result<i64> {
    s.ensure_valid()?;
    Ok(s.crank())
}

/// Maps a partition to its Dyson symbol.
///
/// Without ones, `α = ∅` and `β = λ'`. With `M` ones and `N` parts larger
/// than `M`: `β = (λ_1 - M, …, λ_N - M)` and `α` is the conjugate of
/// `(M, λ_{N+1}, …, λ_s)`, which has exactly `M` parts.
pub fn to_dyson_symbol(lambda: &Partition) -> Result<DysonSymbol> {
    if lambda.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let ones = lambda.count_ones() as u32;
    if ones == 0 {
        return Ok(DysonSymbol::new(Partition::empty(), lambda.conjugate()));
    }
    let parts = lambda.parts();
    let big = lambda.count_greater(ones);
    let beta: Vec<u32> = parts[..big].iter().map(|&p| p - ones).collect();
    let mut nu = Vec::with_capacity(parts.len() - big + 1);
    nu.push(ones);
    nu.extend(parts[big..parts.len() - ones as usize].iter().copied());
    let alpha = Partition::from_sorted_unchecked(nu).conjugate();
    Ok(DysonSymbol::new(
        alpha,
        Partition::from_sorted_unchecked(beta),
    ))
}

/// Inverse of [`to_dyson_symbol`].
pub fn from_dyson_symbol(s: &DysonSymbol) -> Result<Partition> {
    s.ensure_valid()?;
    if s.alpha.is_empty() {
        return Ok(s.beta.conjugate());
    }
    let ones = s.alpha.len() as u32;
    // α' has largest part M; dropping one copy of M leaves (λ_{N+1}, …, λ_s).
    let nu = s.alpha.conjugate().into_parts();
    let mut parts: Vec<u32> = s.beta.parts().iter().map(|&b| b + ones).collect();
    parts.extend(nu.into_iter().skip(1));
    parts.extend(std::iter::repeat_n(1, ones as usize));
    Partition::new(parts)
}

/// All Dyson symbols of weight `n`, as the image of the partitions of `n`.
pub fn enumerate_dyson_symbols(n: u32) -> Result<Vec<DysonSymbol>> {
    enumerate_dyson_symbols_with(n, Exec::default())
}

pub fn enumerate_dyson_symbols_with(n: u32, exec: Exec) -> Result<Vec<DysonSymbol>> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    enumerate_partitions_with(n, exec)
        .iter()
        .map(to_dyson_symbol)
        .collect()
}

/// All Dyson symbols of weight `n` found by searching pairs `(α, β)`
/// directly against the shape conditions. Independent of the bijection;
/// ordered by `(α, β)`.
pub fn enumerate_dyson_symbols_direct(n: u32) -> Vec<DysonSymbol> {
    let mut out = Vec::new();
    for size_a in 0..=n {
        for alpha in partitions_of(size_a) {
            let la = alpha.len() as u32;
            // |β| + la·ℓ(β) = n - |α|
            let rest = n - size_a;
            for size_b in 0..=rest {
                let lb_budget = rest - size_b;
                if la == 0 && lb_budget != 0 {
                    continue;
                }
                for beta in partitions_of(size_b) {
                    if la * beta.len() as u32 != lb_budget {
                        continue;
                    }
                    let s = DysonSymbol::new(alpha.clone(), beta);
                    if s.is_valid() {
                        out.push(s);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn partitions_of(n: u32) -> Vec<Partition> {
    if n == 0 {
        return vec![Partition::empty()];
    }
    PartitionStream::new(n).collect()
}

/// F_1(m; n): Dyson symbols of weight `n` with crank `m`.
pub fn count_f1(m: i64, n: u32) -> Result<u64> {
    Ok(enumerate_dyson_symbols(n)?
        .iter()
        .filter(|s| s.crank() == m)
        .count() as u64)
}

/// F_1(·; n) as a table keyed by crank.
pub fn f1_table(n: u32) -> Result<crate::table::CountTable> {
    let symbols = enumerate_dyson_symbols(n)?;
    Ok(crate::table::CountTable::from_pairs(
        n,
        symbols.iter().map(|s| (s.crank(), 1)),
    ))
}
