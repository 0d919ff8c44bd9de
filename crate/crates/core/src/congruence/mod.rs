//! Crank residue classes, the congruence between full-crank residue counts
//! and crank residue counts modulo prime powers, and a scanner for
//! arithmetic progressions on which those counts vanish.

mod cache;

pub use cache::{cache_dir_from_env, CrankTableCache, TableSource, CACHE_DIR_ENV, CACHE_FILE};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::binomial::gen_binomial;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fullcrank::{full_crank_formula_from, residue_counts};
use crate::marked::MarkedCensus;
use crate::table::{crank_counts_with, symmetrized_moment, CountTable};
use crate::verify::Verdict;

/// Largest weight at which full-crank counts are enumerated by default.
pub const ENUMERATION_LIMIT: u32 = 14;

/// M(i, t; n) for `i = 0, …, t - 1`.
pub fn crank_residue_table(t: u32, n: u32) -> Result<Vec<BigInt>> {
    if n < 2 {
        return Err(Error::invalid("residue tables need n ≥ 2"));
    }
    if t == 0 {
        return Err(Error::invalid("modulus must be positive"));
    }
    Ok(residue_classes(
        &crank_counts_with(n, Exec::default())?,
        u64::from(t),
    ))
}

/// Folds a count table into its `t` residue classes.
pub fn residue_classes(table: &CountTable, t: u64) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); t as usize];
    for (m, c) in table.iter() {
        out[m.rem_euclid(t as i64) as usize] += c;
    }
    out
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn prime_power(p: u32, r: u32) -> Result<u64> {
    if !is_prime(p) || p < 5 {
        return Err(Error::invalid(format!(
            "p must be a prime at least 5, got {p}"
        )));
    }
    if r == 0 {
        return Err(Error::invalid("exponent r must be positive"));
    }
    u64::from(p)
        .checked_pow(r)
        .filter(|&q| q <= i64::MAX as u64)
        .ok_or_else(|| Error::invalid(format!("{p}^{r} is too large")))
}

/// `C(q·t + i + k - 2, 2k - 2) ≡ C(i + k - 2, 2k - 2) (mod q)`.
pub fn binomial_congruence(k: u32, q: u64, i: i64, t: i64) -> bool {
    let b = 2 * k - 2;
    let shift = i64::from(k) - 2;
    let q_big = BigInt::from(q);
    let lhs = gen_binomial(q as i64 * t + i + shift, b).mod_floor(&q_big);
    let rhs = gen_binomial(i + shift, b).mod_floor(&q_big);
    lhs == rhs
}

/// Where the full-crank residue counts NC_k(i, q; n) come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcSource {
    /// Enumerating every k-marked symbol of `n`.
    Enumeration,
    /// `Σ_m C(m + k - 2, 2k - 2) M(m, n)` over each residue class.
    ClosedForm,
}

impl NcSource {
    pub fn for_weight(n: u32) -> Self {
        if n <= ENUMERATION_LIMIT {
            NcSource::Enumeration
        } else {
            NcSource::ClosedForm
        }
    }
}

/// One residue class of the modular identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCheck {
    pub i: u64,
    pub nc: BigInt,
    pub crank_count: BigInt,
    pub binomial: BigInt,
    pub holds: bool,
}

/// Every residue class `0 ≤ i < p^r` of
/// `NC_k(i, p^r; n) ≡ C(i + k - 2, 2k - 2) M(i, p^r; n) (mod p^r)`.
pub fn modular_residues(
    k: u32,
    p: u32,
    r: u32,
    n: u32,
    source: NcSource,
    exec: Exec,
) -> Result<Vec<ResidueCheck>> {
    let q = check_modular_args(k, p, r, n)?;
    let cranks = crank_counts_with(n, exec)?;
    let nc: Vec<BigInt> = match source {
        NcSource::Enumeration => residue_counts(&MarkedCensus::build_with(k as usize, n, exec)?, q)
            .into_iter()
            .map(BigInt::from)
            .collect(),
        NcSource::ClosedForm => {
            let mut out = vec![BigInt::zero(); q as usize];
            for (m, _) in cranks.iter() {
                out[m.rem_euclid(q as i64) as usize] +=
                    full_crank_formula_from(k as usize, m, &cranks);
            }
            out
        }
    };
    let residues = residue_classes(&cranks, q);
    let q_big = BigInt::from(q);
    Ok(nc
        .into_iter()
        .zip(residues)
        .enumerate()
        .map(|(i, (nc, crank_count))| {
            let binomial = gen_binomial(i as i64 + i64::from(k) - 2, 2 * k - 2);
            let holds = (&nc - &binomial * &crank_count).mod_floor(&q_big).is_zero();
            ResidueCheck {
                i: i as u64,
                nc,
                crank_count,
                binomial,
                holds,
            }
        })
        .collect())
}

fn check_modular_args(k: u32, p: u32, r: u32, n: u32) -> Result<u64> {
    let q = prime_power(p, r)?;
    if k == 0 || 2 * k > p + 1 {
        return Err(Error::invalid(format!(
            "need 1 ≤ k ≤ (p + 1)/2, got k = {k}, p = {p}"
        )));
    }
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    Ok(q)
}

/// Checks the modular identity at weight `n` for every residue, together
/// with the binomial congruence for every `q·t + i` with `|q·t + i| ≤ n`.
/// `lhs` counts the congruences that held and `rhs` those checked.
pub fn verify_modular_identity(k: u32, p: u32, r: u32, n: u32) -> Result<Verdict> {
    verify_modular_identity_with(k, p, r, n, NcSource::for_weight(n), Exec::default())
}

pub fn verify_modular_identity_with(
    k: u32,
    p: u32,
    r: u32,
    n: u32,
    source: NcSource,
    exec: Exec,
) -> Result<Verdict> {
    let q = check_modular_args(k, p, r, n)? as i64;
    let residues = modular_residues(k, p, r, n, source, exec)?;
    let mut held = residues.iter().filter(|c| c.holds).count() as u64;
    let mut checked = residues.len() as u64;
    let reach = i64::from(n);
    for i in 0..q {
        let lo = (-reach - i).div_euclid(q);
        let hi = (reach - i).div_euclid(q);
        for t in lo..=hi {
            checked += 1;
            held += u64::from(binomial_congruence(k, q as u64, i, t));
        }
    }
    let mut v = Verdict::new(
        "mod-identity",
        k,
        n,
        BigInt::from(held),
        BigInt::from(checked),
    );
    v.pass = held == checked;
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// Every M(i, p^r; An+B) vanishes mod p^r.
    CrankResidue,
    /// μ_{2k}(An+B) vanishes mod p^r.
    Moment,
}

/// Finite-range evidence that a statistic vanishes mod `p^r` along `An + B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceWitness {
    pub p: u32,
    pub r: u32,
    #[serde(rename = "A")]
    pub a: u32,
    #[serde(rename = "B")]
    pub b: u32,
    pub kind: WitnessKind,
    pub k: Option<u32>,
    pub n_max: u32,
    /// True when the congruence held at every point `2 ≤ An + B ≤ n_max`.
    pub holds: bool,
    pub points: u32,
}

impl CongruenceWitness {
    pub fn to_json_line(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub p: u32,
    pub r: u32,
    /// Also look for moment witnesses of μ_{2k}.
    pub k: Option<u32>,
    pub a_max: u32,
    pub n_max: u32,
    /// Progressions with fewer points in range are skipped.
    pub min_points: u32,
    /// Report progressions where the congruence fails as well.
    pub include_failures: bool,
}

impl ScanConfig {
    pub fn new(p: u32, r: u32, a_max: u32, n_max: u32) -> Self {
        ScanConfig {
            p,
            r,
            k: None,
            a_max,
            n_max,
            min_points: 3,
            include_failures: false,
        }
    }
}

/// Checks every progression `An + B` with `1 ≤ A ≤ a_max`, `0 ≤ B < A`.
/// Nested progressions are all reported; no subsumption is attempted.
/// The output is sorted by `(A, B, kind)` whatever the execution mode.
pub fn scan_progressions(
    config: &ScanConfig,
    cache: &CrankTableCache,
    exec: Exec,
) -> Result<Vec<CongruenceWitness>> {
    let q = prime_power(config.p, config.r)?;
    if let Some(k) = config.k {
        if k == 0 || 2 * k + 1 > config.p {
            return Err(Error::invalid(format!(
                "moment scans need 1 ≤ k ≤ (p - 1)/2, got k = {k}"
            )));
        }
    }
    if config.a_max == 0 {
        return Err(Error::invalid("a_max must be positive"));
    }
    if cache.n_max() < config.n_max && config.n_max >= 2 {
        return Err(Error::invalid(format!(
            "cache only reaches n = {}",
            cache.n_max()
        )));
    }
    let q_big = BigInt::from(q);
    let cells: Vec<(u32, u32)> = (1..=config.a_max)
        .flat_map(|a| (0..a).map(move |b| (a, b)))
        .collect();
    let found = exec.flat_map(cells, |(a, b)| {
        let xs: Vec<u32> = (b..=config.n_max)
            .step_by(a as usize)
            .filter(|&x| x >= 2)
            .collect();
        if (xs.len() as u32) < config.min_points {
            return Vec::new();
        }
        let tables: Vec<&CountTable> = xs
            .iter()
            .map(|&x| cache.get(x).expect("table in cache"))
            .collect();
        let witness = |kind, k, holds| CongruenceWitness {
            p: config.p,
            r: config.r,
            a,
            b,
            kind,
            k,
            n_max: config.n_max,
            holds,
            points: xs.len() as u32,
        };
        let mut out = Vec::new();
        let residue_holds = tables.iter().all(|t| {
            residue_classes(t, q)
                .iter()
                .all(|c| c.mod_floor(&q_big).is_zero())
        });
        out.push(witness(WitnessKind::CrankResidue, None, residue_holds));
        if let Some(k) = config.k {
            let moment_holds = tables
                .iter()
                .all(|t| symmetrized_moment(2 * k, t).mod_floor(&q_big).is_zero());
            out.push(witness(WitnessKind::Moment, Some(k), moment_holds));
        }
        out.retain(|w| w.holds || config.include_failures);
        out
    });
    Ok(found)
}
