//! Merging a strict k-marked symbol into a single Dyson symbol, and peeling
//! it back apart.

use super::{MarkedDysonSymbol, Pair};
use crate::dyson::DysonSymbol;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Collects every `α^(i)` part together with the markers into `α`, and every
/// `β^(i)` part into `β`. The result has crank `Σ c_i + k - 1` and the same
/// weight.
pub fn phi(eta: &MarkedDysonSymbol) -> Result<DysonSymbol> {
    eta.check()?;
    if let Some(level) = eta.first_non_strict_level() {
        return Err(Error::NotStrict(level));
    }
    let top = eta.k();
    let c = eta.level(top).crank();
    if c < 0 {
        return Err(Error::CrankMismatch {
            expected: 0,
            actual: c,
        });
    }
    let mut alpha: Vec<u32> = eta.markers().to_vec();
    let mut beta = Vec::new();
    for pair in eta.levels() {
        alpha.extend_from_slice(pair.alpha.parts());
        beta.extend_from_slice(pair.beta.parts());
    }
    Ok(DysonSymbol::new(
        Partition::from_unsorted(alpha)?,
        Partition::from_unsorted(beta)?,
    ))
}

/// Peels a Dyson symbol with crank `Σ m_i + k - 1` into the strict k-marked
/// symbol with cranks `m = (m_1, …, m_k)` (bottom level first).
///
/// Working top-down with the level's crank `m`, take the largest `j ≥ 0`
/// such that `α_{m+j+1}` exists and, for `j > 0`, `β_j ≥ α_{m+j+1}`. The
/// level receives `α_1..α_{m+j}` and `β_1..β_j`, the next marker is
/// `α_{m+j+1}`, and the rest is peeled for the level below. Level 1 takes
/// whatever remains.
pub fn phi_inverse(s: &DysonSymbol, m: &[u32]) -> Result<MarkedDysonSymbol> {
    if !s.is_valid() {
        return Err(Error::InvalidDysonSymbol(s.to_string()));
    }
    let k = m.len();
    if k == 0 {
        return Err(Error::invalid("crank profile must have at least one entry"));
    }
    let expected = m.iter().map(|&x| i64::from(x)).sum::<i64>() + k as i64 - 1;
    if s.crank() != expected {
        return Err(Error::CrankMismatch {
            expected,
            actual: s.crank(),
        });
    }
    let mut alpha = s.alpha.parts();
    let mut beta = s.beta.parts();
    let mut levels = Vec::with_capacity(k);
    let mut markers = Vec::with_capacity(k - 1);
    for &mk in m[1..].iter().rev() {
        let mk = mk as usize;
        let fits = |j: usize| alpha.len() > mk + j && (j == 0 || beta[j - 1] >= alpha[mk + j]);
        let j = (0..=beta.len())
            .rev()
            .find(|&j| fits(j))
            .ok_or_else(|| Error::invalid(format!("no marker available while peeling {s}")))?;
        levels.push(pair(&alpha[..mk + j], &beta[..j]));
        markers.push(alpha[mk + j]);
        alpha = &alpha[mk + j + 1..];
        beta = &beta[j..];
    }
    levels.push(pair(alpha, beta));
    levels.reverse();
    markers.reverse();
    let eta = MarkedDysonSymbol::from_raw(levels, markers);
    eta.check()?;
    debug_assert!(eta.is_strict());
    Ok(eta)
}

fn pair(alpha: &[u32], beta: &[u32]) -> Pair {
    Pair::new(
        Partition::from_sorted_unchecked(alpha.to_vec()),
        Partition::from_sorted_unchecked(beta.to_vec()),
    )
}
