//! The full crank of a k-marked Dyson symbol, its counting functions, and
//! the solution-count identities that tie k-marked symbols to crank moments.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::binomial::gen_binomial;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::marked::{enumerate_marked_with, MarkedCensus, MarkedDysonSymbol, Statistics};
use crate::table::{crank_counts, crank_moment, CountTable};
use crate::verify::Verdict;

/// `±(l - s + 2D + k - 1)`, positive exactly when the top crank is positive.
pub fn full_crank(eta: &MarkedDysonSymbol) -> Result<i64> {
    eta.check()?;
    Ok(full_crank_from_stats(eta.k(), &eta.statistics()))
}

pub(crate) fn full_crank_from_stats(k: usize, st: &Statistics) -> i64 {
    let magnitude = i64::from(st.l) - i64::from(st.s) + 2 * i64::from(st.d) + k as i64 - 1;
    if st.cranks[k - 1] > 0 {
        magnitude
    } else {
        -magnitude
    }
}

/// A full crank paired with the symbol it was computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullCrankRecord {
    pub symbol: MarkedDysonSymbol,
    pub value: i64,
}

impl FullCrankRecord {
    pub fn new(symbol: MarkedDysonSymbol) -> Result<Self> {
        let value = full_crank(&symbol)?;
        Ok(FullCrankRecord { symbol, value })
    }
}

fn require_weight_two(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid("full-crank counts are defined for n ≥ 2"));
    }
    Ok(())
}

/// C_k(m; n): k-marked symbols of `n` with full crank `m`, by enumeration.
pub fn count_full_crank(k: usize, m: i64, n: u32) -> Result<u64> {
    require_weight_two(n)?;
    let all = enumerate_marked_with(k, n, Exec::default())?;
    Ok(all
        .iter()
        .filter(|eta| full_crank_from_stats(k, &eta.statistics()) == m)
        .count() as u64)
}

/// NC_k(i, t; n): k-marked symbols of `n` with full crank `≡ i (mod t)`.
pub fn count_full_crank_residue(k: usize, i: u64, t: u64, n: u32) -> Result<u64> {
    require_weight_two(n)?;
    check_residue(i, t)?;
    Ok(residue_counts(&MarkedCensus::build(k, n)?, t)[i as usize])
}

fn check_residue(i: u64, t: u64) -> Result<()> {
    if t == 0 || i >= t {
        return Err(Error::invalid(format!(
            "need 0 ≤ i < t, got i = {i}, t = {t}"
        )));
    }
    Ok(())
}

/// All `t` residue classes of the full crank at once.
pub fn residue_counts(census: &MarkedCensus, t: u64) -> Vec<u64> {
    let mut out = vec![0u64; t as usize];
    for (&m, &c) in &census.by_full_crank {
        out[m.rem_euclid(t as i64) as usize] += c;
    }
    out
}

/// `C(m + k - 2, 2k - 2) · M(m, n)`, the closed form of C_k(m; n).
pub fn full_crank_formula(k: usize, m: i64, n: u32) -> Result<BigInt> {
    require_weight_two(n)?;
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    Ok(full_crank_formula_from(k, m, &crank_counts(n)?))
}

pub fn full_crank_formula_from(k: usize, m: i64, cranks: &CountTable) -> BigInt {
    let k = k as i64;
    gen_binomial(m + k - 2, (2 * k - 2) as u32) * cranks.get(m)
}

/// `c_k(j) = C(2k + j, 2k) + C(2k + j - 1, 2k)`.
pub fn ck_closed_form(k: u32, j: u32) -> BigInt {
    let (k, j) = (i64::from(k), i64::from(j));
    gen_binomial(2 * k + j, 2 * k as u32) + gen_binomial(2 * k + j - 1, 2 * k as u32)
}

/// Number of integer solutions of `|m_1| + … + |m_{k+1}| + 2t_1 + … + 2t_k = j`
/// with `t_i ≥ 0`, counted by sweeping every admissible value of each
/// variable in turn.
pub fn ck_brute(k: u32, j: u32) -> BigInt {
    let mut counts = start(j);
    for _ in 0..=k {
        counts = add_signed(&counts, j, false);
    }
    for _ in 0..k {
        counts = add_doubled(&counts, j);
    }
    counts.swap_remove(j as usize)
}

/// `C(m + k - 2, 2k - 2)`, the number of solutions of
/// `|m_1| + … + |m_k| + 2t_1 + … + 2t_{k-1} = m - k + 1` with `m_k ≥ 1`.
pub fn barck_closed_form(k: u32, m: i64) -> BigInt {
    let k = i64::from(k);
    gen_binomial(m + k - 2, (2 * k - 2) as u32)
}

pub fn barck_brute(k: u32, m: i64) -> BigInt {
    if k == 0 {
        return BigInt::zero();
    }
    let target = m - i64::from(k) + 1;
    if target < 0 {
        return BigInt::zero();
    }
    let j = target as u32;
    let mut counts = start(j);
    for _ in 0..k - 1 {
        counts = add_signed(&counts, j, false);
    }
    counts = add_signed(&counts, j, true);
    for _ in 0..k - 1 {
        counts = add_doubled(&counts, j);
    }
    counts.swap_remove(j as usize)
}

fn start(j: u32) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); j as usize + 1];
    v[0] = BigInt::from(1);
    v
}

/// Adds one variable `m` contributing `|m|`; `positive` restricts to `m ≥ 1`.
fn add_signed(counts: &[BigInt], j: u32, positive: bool) -> Vec<BigInt> {
    let j = j as i64;
    let mut next = vec![BigInt::zero(); counts.len()];
    for (s, c) in counts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let room = j - s as i64;
        let lo = if positive { 1 } else { -room };
        for v in lo..=room {
            next[s + v.unsigned_abs() as usize] += c;
        }
    }
    next
}

/// Adds one variable `t ≥ 0` contributing `2t`.
fn add_doubled(counts: &[BigInt], j: u32) -> Vec<BigInt> {
    let mut next = vec![BigInt::zero(); counts.len()];
    for (s, c) in counts.iter().enumerate() {
        let mut x = s;
        while x <= j as usize {
            next[x] += c;
            x += 2;
        }
    }
    next
}

/// Coefficients of `(1 + q) / (1 - q)^(2k + 1)` through `q^order`, by
/// repeated prefix sums.
pub fn ck_series(k: u32, order: u32) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::zero(); order as usize + 1];
    coeffs[0] = BigInt::from(1);
    if order >= 1 {
        coeffs[1] = BigInt::from(1);
    }
    for _ in 0..2 * k + 1 {
        for i in 1..coeffs.len() {
            let prev = coeffs[i - 1].clone();
            coeffs[i] += prev;
        }
    }
    coeffs
}

/// Compares the number of (k+1)-marked symbols of `n` with μ_{2k}(n).
pub fn verify_marked_total(k: u32, n: u32) -> Result<Verdict> {
    verify_marked_total_with(k, n, Exec::default())
}

pub fn verify_marked_total_with(k: u32, n: u32, exec: Exec) -> Result<Verdict> {
    if k == 0 || n < 2 {
        return Err(Error::invalid("need k ≥ 1 and n ≥ 2"));
    }
    let lhs = BigInt::from(enumerate_marked_with(k as usize + 1, n, exec)?.len());
    let rhs = crank_moment(2 * k, n)?;
    Ok(Verdict::new("thm3.1", k, n, lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marked::fixtures::weight_97;

    #[test]
    fn full_crank_examples() {
        let one = |a: &[u32], b: &[u32]| MarkedDysonSymbol::from_parts(&[(a, b)], &[]).unwrap();
        assert_eq!(full_crank(&one(&[2, 2], &[])).unwrap(), 2);
        assert_eq!(full_crank(&one(&[], &[2, 2])).unwrap(), -2);
        assert_eq!(full_crank(&weight_97()).unwrap(), 9);
        let rec = FullCrankRecord::new(weight_97()).unwrap();
        assert_eq!(rec.value, 9);
    }

    #[test]
    fn full_crank_counts_at_five() {
        assert_eq!(count_full_crank(2, 5, 5).unwrap(), 10);
        let total: u64 = (-12..=12).map(|m| count_full_crank(2, m, 5).unwrap()).sum();
        assert_eq!(total, 35);
        // full cranks 5, 0 and -5 contribute 10, 0 and 15
        assert_eq!(count_full_crank_residue(2, 0, 5, 5).unwrap(), 25);
        assert_eq!(count_full_crank(2, -5, 5).unwrap(), 15);
        assert_eq!(count_full_crank(2, -3, 5).unwrap(), 6);
        assert_eq!(count_full_crank_residue(2, 0, 1, 5).unwrap(), 35);
        assert!(count_full_crank_residue(2, 5, 5, 5).is_err());
        assert!(count_full_crank(2, 0, 1).is_err());
    }

    #[test]
    fn formula_values() {
        // C(-3, 2) · M(-3, 5)
        assert_eq!(full_crank_formula(2, -3, 5).unwrap(), BigInt::from(6));
        assert_eq!(full_crank_formula(2, -1, 5).unwrap(), BigInt::from(1));
        assert_eq!(full_crank_formula(2, 1, 5).unwrap(), BigInt::from(0));
        let m5 = crank_counts(5).unwrap();
        for m in -6..=6 {
            assert_eq!(full_crank_formula(1, m, 5).unwrap(), m5.get(m));
        }
    }

    #[test]
    fn ck_values() {
        assert_eq!(ck_closed_form(1, 0), BigInt::from(1));
        assert_eq!(ck_closed_form(1, 1), BigInt::from(4));
        assert_eq!(ck_brute(1, 0), BigInt::from(1));
        assert_eq!(ck_brute(1, 1), BigInt::from(4));
    }

    /// Literal tuple enumeration, small ranges only.
    fn tuples(vars_signed: usize, vars_doubled: usize, j: i64, first_positive: bool) -> u64 {
        fn go(signed: usize, doubled: usize, left: i64, positive_next: bool) -> u64 {
            if signed == 0 && doubled == 0 {
                return u64::from(left == 0);
            }
            let mut count = 0;
            if signed > 0 {
                let lo = if positive_next { 1 } else { -left };
                for v in lo..=left {
                    count += go(signed - 1, doubled, left - v.abs(), false);
                }
            } else {
                for t in 0..=left / 2 {
                    count += go(0, doubled - 1, left - 2 * t, false);
                }
            }
            count
        }
        go(vars_signed, vars_doubled, j, first_positive)
    }

    #[test]
    fn sweeps_match_literal_enumeration() {
        for k in 1..=2u32 {
            for j in 0..=10u32 {
                assert_eq!(
                    ck_brute(k, j),
                    BigInt::from(tuples(k as usize + 1, k as usize, j as i64, false))
                );
            }
            for m in 0..=10i64 {
                let target = m - i64::from(k) + 1;
                let lit = if target < 0 {
                    0
                } else {
                    tuples(k as usize, k as usize - 1, target, true)
                };
                assert_eq!(barck_brute(k, m), BigInt::from(lit), "k = {k}, m = {m}");
            }
        }
    }

    #[test]
    fn barck_values() {
        for m in 1..=10 {
            assert_eq!(barck_closed_form(1, m), BigInt::from(1));
            assert_eq!(barck_brute(1, m), BigInt::from(1));
        }
        assert_eq!(barck_closed_form(2, 3), BigInt::from(3));
        assert_eq!(barck_brute(2, 3), BigInt::from(3));
    }

    #[test]
    fn series_low_order() {
        // (1 + q)/(1 - q)^3 = 1 + 4q + 9q^2 + 16q^3 + ...
        let s = ck_series(1, 4);
        assert_eq!(s, [1, 4, 9, 16, 25].map(BigInt::from).to_vec());
    }

    #[test]
    fn marked_total_small() {
        let v = verify_marked_total(1, 5).unwrap();
        assert_eq!(
            (v.lhs.clone(), v.rhs.clone()),
            (BigInt::from(35), BigInt::from(35))
        );
        assert!(v.pass);
        assert!(verify_marked_total(1, 4).unwrap().pass);
    }
}
