//! The mirror map: negates the `j`-th crank of a marked symbol while
//! keeping its weight and every other crank.

use super::{MarkedDysonSymbol, Pair};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Rebuilds level `j` (1-based) so that its crank changes sign.
///
/// Below the top level the pair is swapped. At the top level, with
/// `p = p_{k-1}` and `c_k > 0`:
///
/// * `α = (p)`, `β = ∅` becomes `α = ∅`, `β = (p)`;
/// * `ℓ(α) ≥ 2` and `ℓ(β) ≠ 1`: with `t = β_1 - β_2` (0 when `β = ∅`),
///   `ᾱ = (β_2, β_2, β_3, …)` and `β̄ = (α_1 + t, α_2, …)`;
/// * `ℓ(α) ≥ 2` and `β = (b)`: with `t = b - p`, `ᾱ = (p)` and
///   `β̄ = (α_1 + t, α_2, …)`.
///
/// For `c_k < 0` the inverse of these rules is applied, so `mirror` is its
/// own inverse on every level. A zero crank leaves the symbol unchanged.
pub fn mirror(eta: &MarkedDysonSymbol, j: usize) -> Result<MarkedDysonSymbol> {
    eta.check()?;
    let k = eta.k();
    if j == 0 || j > k {
        return Err(Error::invalid(format!("level {j} out of range 1..={k}")));
    }
    let pair = eta.level(j);
    if pair.crank() == 0 {
        return Ok(eta.clone());
    }
    let swapped = Pair::new(pair.beta.clone(), pair.alpha.clone());
    let next = if j < k {
        swapped
    } else if pair.crank() > 0 {
        top_forward(pair, eta.marker(k - 1))
    } else {
        top_backward(pair, eta.marker(k - 1))
    };
    Ok(eta.replace_level(j, next))
}

fn top_forward(pair: &Pair, floor: u32) -> Pair {
    let a = pair.alpha.parts();
    let b = pair.beta.parts();
    match (a.len(), b.len()) {
        (1, _) => Pair::new(Partition::empty(), pair.alpha.clone()),
        (_, 1) => {
            let t = b[0] - floor;
            Pair::new(single(floor), bump_first(a, t))
        }
        _ => balanced_swap(pair),
    }
}

fn top_backward(pair: &Pair, floor: u32) -> Pair {
    let a = pair.alpha.parts();
    let b = pair.beta.parts();
    match (a.len(), b.len()) {
        // (∅, (p)) and (∅, β) with β_1 = β_2 both came from a plain swap.
        (0, _) => Pair::new(pair.beta.clone(), Partition::empty()),
        (1, _) => {
            // α = (p), β = (α_1 + t, α_2, …) with α_1 = α_2
            let t = b[0] - b[1];
            let mut alpha = b.to_vec();
            alpha[0] = b[1];
            Pair::new(Partition::from_sorted_unchecked(alpha), single(floor + t))
        }
        _ => balanced_swap(pair),
    }
}

/// The `ℓ(α), ℓ(β) ≠ 1` rule, which is an involution.
fn balanced_swap(pair: &Pair) -> Pair {
    let a = pair.alpha.parts();
    let b = pair.beta.parts();
    let t = if b.len() >= 2 { b[0] - b[1] } else { 0 };
    let mut alpha = b.to_vec();
    if let Some(first) = alpha.first_mut() {
        *first -= t;
    }
    Pair::new(Partition::from_sorted_unchecked(alpha), bump_first(a, t))
}

fn bump_first(parts: &[u32], t: u32) -> Partition {
    let mut v = parts.to_vec();
    v[0] += t;
    Partition::from_sorted_unchecked(v)
}

fn single(x: u32) -> Partition {
    Partition::from_sorted_unchecked(vec![x])
}
