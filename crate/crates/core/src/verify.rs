//! Verification suites: each identity is checked by computing both sides
//! independently over a range of weights, one [`Verdict`] per `(k, n)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::congruence::{verify_modular_identity_with, NcSource};
use crate::dyson::{
    enumerate_dyson_symbols_direct, enumerate_dyson_symbols_with, from_dyson_symbol,
    to_dyson_symbol,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fullcrank::{ck_brute, ck_closed_form, ck_series, full_crank_formula_from};
use crate::marked::{
    enumerate_marked_with, mirror, phi, phi_inverse, profile_count_formula_from, MarkedCensus,
    MarkedDysonSymbol,
};
use crate::partition::enumerate_partitions_with;
use crate::table::{crank_counts_with, symmetrized_moment, CountTable};

/// Outcome of one identity at one `(k, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub identity: String,
    pub k: u32,
    pub n: u32,
    #[serde(with = "crate::json::big")]
    pub lhs: BigInt,
    #[serde(with = "crate::json::big")]
    pub rhs: BigInt,
    pub pass: bool,
}

impl Verdict {
    /// `pass` starts as `lhs == rhs`; suites that aggregate may clear it.
    pub fn new(identity: impl Into<String>, k: u32, n: u32, lhs: BigInt, rhs: BigInt) -> Self {
        let pass = lhs == rhs;
        Verdict {
            identity: identity.into(),
            k,
            n,
            lhs,
            rhs,
            pass,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "pass" } else { "FAIL" };
        write!(
            f,
            "{} k={} n={} lhs={} rhs={} {status}",
            self.identity, self.k, self.n, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// `M(-m, n) = F_1(m; n)` and crank negation under the Dyson map.
    DysonCrank,
    /// F_k as a sum of F_1 values over balance shifts.
    ProfileCount,
    /// F_k is invariant under negating any single crank.
    MirrorSymmetry,
    /// Balance-refined counts equal shifted strict counts.
    BalanceShift,
    /// Strict symbols merge bijectively into Dyson symbols.
    StrictMerge,
    /// (k+1)-marked symbols of `n` number μ_{2k}(n).
    MarkedTotal,
    /// `C_k(m; n) = C(m + k - 2, 2k - 2) M(m, n)`.
    FullCrankCount,
    /// Coefficients of `(1 + q)/(1 - q)^(2k+1)`.
    SolutionSeries,
    /// Full-crank residues against crank residues mod `p^r`.
    ModularIdentity,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::DysonCrank,
        Identity::ProfileCount,
        Identity::MirrorSymmetry,
        Identity::BalanceShift,
        Identity::StrictMerge,
        Identity::MarkedTotal,
        Identity::FullCrankCount,
        Identity::SolutionSeries,
        Identity::ModularIdentity,
    ];

    /// Command-line identifier.
    pub fn id(self) -> &'static str {
        match self {
            Identity::DysonCrank => "cor2.3",
            Identity::ProfileCount => "thm2.1",
            Identity::MirrorSymmetry => "thm2.4",
            Identity::BalanceShift => "thm2.5",
            Identity::StrictMerge => "thm2.6",
            Identity::MarkedTotal => "thm3.1",
            Identity::FullCrankCount => "thm4.3",
            Identity::SolutionSeries => "gf-ck",
            Identity::ModularIdentity => "mod-identity",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.id() == s)
            .ok_or_else(|| Error::invalid(format!("unknown identity {s:?}")))
    }
}

/// Optional overrides of a suite's default range.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bounds {
    /// Restrict to this single k.
    pub k: Option<u32>,
    /// Smallest weight checked (at least 2).
    pub min_n: Option<u32>,
    pub max_n: Option<u32>,
    pub max_j: Option<u32>,
    pub p: Option<u32>,
    pub r: Option<u32>,
    /// Use enumeration where a faster route is the default: Dyson symbols
    /// by direct search at every `n`, full-crank residues by enumeration at
    /// every `n`.
    pub oracle: bool,
}

impl Bounds {
    fn first_n(&self) -> u32 {
        self.min_n.unwrap_or(2).max(2)
    }
}

/// The verdicts of one suite plus a description of each failed case.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub verdicts: Vec<Verdict>,
    pub mismatches: Vec<String>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty() && self.verdicts.iter().all(|v| v.pass)
    }

    fn absorb(&mut self, other: SuiteReport) {
        self.verdicts.extend(other.verdicts);
        self.mismatches.extend(other.mismatches);
    }
}

/// Weights up to which Dyson-symbol counts use the direct search rather
/// than the image of the partitions (when not in oracle mode).
const DIRECT_SEARCH_LIMIT: u32 = 20;

/// Runs suites while memoizing enumerations shared between them.
pub struct Verifier {
    exec: Exec,
    symbols: HashMap<(usize, u32), Arc<Vec<MarkedDysonSymbol>>>,
    censuses: HashMap<(usize, u32), Arc<MarkedCensus>>,
    cranks: HashMap<u32, Arc<CountTable>>,
}

impl Verifier {
    pub fn new(exec: Exec) -> Self {
        Verifier {
            exec,
            symbols: HashMap::new(),
            censuses: HashMap::new(),
            cranks: HashMap::new(),
        }
    }

    fn symbols(&mut self, k: usize, n: u32) -> Result<Arc<Vec<MarkedDysonSymbol>>> {
        if let Some(hit) = self.symbols.get(&(k, n)) {
            return Ok(Arc::clone(hit));
        }
        let all = Arc::new(enumerate_marked_with(k, n, self.exec)?);
        self.symbols.insert((k, n), Arc::clone(&all));
        Ok(all)
    }

    fn census(&mut self, k: usize, n: u32) -> Result<Arc<MarkedCensus>> {
        if let Some(hit) = self.censuses.get(&(k, n)) {
            return Ok(Arc::clone(hit));
        }
        let symbols = self.symbols(k, n)?;
        let census = Arc::new(MarkedCensus::from_symbols(k, n, &symbols));
        self.censuses.insert((k, n), Arc::clone(&census));
        Ok(census)
    }

    fn cranks(&mut self, n: u32) -> Result<Arc<CountTable>> {
        if let Some(hit) = self.cranks.get(&n) {
            return Ok(Arc::clone(hit));
        }
        let table = Arc::new(crank_counts_with(n, self.exec)?);
        self.cranks.insert(n, Arc::clone(&table));
        Ok(table)
    }

    /// Drops memoized enumerations.
    pub fn clear(&mut self) {
        self.symbols.clear();
        self.censuses.clear();
        self.cranks.clear();
    }

    pub fn run(&mut self, id: Identity, bounds: &Bounds) -> Result<SuiteReport> {
        match id {
            Identity::DysonCrank => self.dyson_crank(bounds),
            Identity::ProfileCount => self.per_k(bounds, &[(2, 14), (3, 12)], Self::profile_count),
            Identity::MirrorSymmetry => {
                self.per_k(bounds, &[(1, 12), (2, 12), (3, 12)], Self::mirror_symmetry)
            }
            Identity::BalanceShift => self.per_k(bounds, &[(2, 12), (3, 12)], Self::balance_shift),
            Identity::StrictMerge => self.per_k(bounds, &[(2, 14), (3, 14)], Self::strict_merge),
            Identity::MarkedTotal => self.per_k(bounds, &[(1, 14), (2, 10)], Self::marked_total),
            Identity::FullCrankCount => {
                self.per_k(bounds, &[(1, 14), (2, 14), (3, 14)], Self::full_crank_count)
            }
            Identity::SolutionSeries => Ok(self.solution_series(bounds)),
            Identity::ModularIdentity => self.modular_identity(bounds),
        }
    }

    pub fn run_all(&mut self, bounds: &Bounds) -> Result<SuiteReport> {
        let mut report = SuiteReport::default();
        for id in Identity::ALL {
            report.absorb(self.run(id, bounds)?);
        }
        Ok(report)
    }

    fn per_k(
        &mut self,
        bounds: &Bounds,
        defaults: &[(u32, u32)],
        check: fn(&mut Self, u32, u32, &mut Vec<String>) -> Result<Verdict>,
    ) -> Result<SuiteReport> {
        let plan: Vec<(u32, u32)> = match bounds.k {
            Some(k) => {
                let fallback = defaults
                    .iter()
                    .find(|d| d.0 == k)
                    .or(defaults.last())
                    .map_or(12, |d| d.1);
                vec![(k, bounds.max_n.unwrap_or(fallback))]
            }
            None => defaults
                .iter()
                .map(|&(k, n)| (k, bounds.max_n.unwrap_or(n)))
                .collect(),
        };
        let mut report = SuiteReport::default();
        for (k, max_n) in plan {
            if k == 0 {
                return Err(Error::invalid("k must be at least 1"));
            }
            for n in bounds.first_n()..=max_n {
                let v = check(self, k, n, &mut report.mismatches)?;
                report.verdicts.push(v);
            }
        }
        Ok(report)
    }

    fn f1_counts(&self, n: u32, oracle: bool) -> Result<BTreeMap<i64, u64>> {
        let symbols = if oracle || n <= DIRECT_SEARCH_LIMIT {
            enumerate_dyson_symbols_direct(n)
        } else {
            enumerate_dyson_symbols_with(n, self.exec)?
        };
        let mut out = BTreeMap::new();
        for s in symbols {
            *out.entry(s.crank()).or_insert(0u64) += 1;
        }
        Ok(out)
    }

    fn dyson_crank(&mut self, bounds: &Bounds) -> Result<SuiteReport> {
        let mut report = SuiteReport::default();
        for n in bounds.first_n()..=bounds.max_n.unwrap_or(30) {
            let id = Identity::DysonCrank.id();
            let cranks = self.cranks(n)?;
            let f1 = self.f1_counts(n, bounds.oracle)?;
            let (mut lhs, mut rhs, mut pass) = (BigInt::zero(), BigInt::zero(), true);
            let reach = i64::from(n);
            for m in -reach..=reach {
                let left = cranks.get(-m);
                let right = BigInt::from(f1.get(&m).copied().unwrap_or(0));
                if left != right {
                    pass = false;
                    report
                        .mismatches
                        .push(format!("{id} n={n} m={m}: M(-m,n)={left} F1(m;n)={right}"));
                }
                lhs += left;
                rhs += right;
            }
            for lambda in enumerate_partitions_with(n, self.exec) {
                let s = to_dyson_symbol(&lambda)?;
                let ok = s.is_valid()
                    && s.weight() == n
                    && s.crank() == -lambda.crank()?
                    && from_dyson_symbol(&s)? == lambda;
                if !ok {
                    pass = false;
                    report
                        .mismatches
                        .push(format!("{id} n={n}: Dyson map fails at {lambda} -> {s}"));
                }
            }
            let mut v = Verdict::new(id, 1, n, lhs, rhs);
            v.pass &= pass;
            report.verdicts.push(v);
        }
        Ok(report)
    }

    fn profile_count(&mut self, k: u32, n: u32, mismatches: &mut Vec<String>) -> Result<Verdict> {
        let id = Identity::ProfileCount.id();
        let census = self.census(k as usize, n)?;
        let f1 = CountTable::from_pairs(
            n,
            self.f1_counts(n, false)?
                .into_iter()
                .map(|(m, c)| (m, c as i64)),
        );
        let (mut lhs, mut rhs, mut pass) = (BigInt::zero(), BigInt::zero(), true);
        for profile in profiles_within(k as usize, i64::from(n)) {
            let left = BigInt::from(census.fk(&profile));
            let right = profile_count_formula_from(&f1, &profile);
            if left != right {
                pass = false;
                mismatches.push(format!(
                    "{id} k={k} n={n} m={profile:?}: count {left}, formula {right}"
                ));
            }
            lhs += left;
            rhs += right;
        }
        let mut v = Verdict::new(id, k, n, lhs, rhs);
        v.pass &= pass;
        Ok(v)
    }

    fn mirror_symmetry(&mut self, k: u32, n: u32, mismatches: &mut Vec<String>) -> Result<Verdict> {
        let id = Identity::MirrorSymmetry.id();
        let census = self.census(k as usize, n)?;
        let symbols = self.symbols(k as usize, n)?;
        let (mut lhs, mut rhs, mut pass) = (0u64, 0u64, true);
        for j in 0..k as usize {
            for (profile, &count) in &census.by_cranks {
                let mut flipped = profile.clone();
                flipped[j] = -flipped[j];
                let other = census.fk(&flipped);
                if count != other {
                    pass = false;
                    mismatches.push(format!(
                        "{id} k={k} n={n} j={} m={profile:?}: {count} vs {other}",
                        j + 1
                    ));
                }
                lhs += count;
                rhs += other;
            }
            let mut images = HashSet::new();
            let mut moved = 0usize;
            for eta in symbols.iter().filter(|eta| eta.level(j + 1).crank() != 0) {
                moved += 1;
                let image = mirror(eta, j + 1)?;
                let mut expect = eta.cranks();
                expect[j] = -expect[j];
                let ok = image.is_valid()
                    && image.weight() == n
                    && image.cranks() == expect
                    && mirror(&image, j + 1)? == *eta;
                if !ok {
                    pass = false;
                    mismatches.push(format!(
                        "{id} k={k} n={n} j={}: mirror fails at {eta}",
                        j + 1
                    ));
                }
                images.insert(image);
            }
            if images.len() != moved {
                pass = false;
                mismatches.push(format!(
                    "{id} k={k} n={n} j={}: mirror is not injective",
                    j + 1
                ));
            }
        }
        let mut v = Verdict::new(id, k, n, BigInt::from(lhs), BigInt::from(rhs));
        v.pass &= pass;
        Ok(v)
    }

    fn balance_shift(&mut self, k: u32, n: u32, mismatches: &mut Vec<String>) -> Result<Verdict> {
        let id = Identity::BalanceShift.id();
        if k < 2 {
            return Err(Error::invalid("balance shifts need k ≥ 2"));
        }
        let census = self.census(k as usize, n)?;
        let nonnegative = |m: &[i64]| m.iter().all(|&x| x >= 0);
        let mut cases: BTreeSet<(Vec<i64>, Vec<u32>)> = census
            .by_cranks_balances
            .keys()
            .filter(|(m, _)| nonnegative(m))
            .cloned()
            .collect();
        for shifted in census.strict_by_cranks.keys().filter(|m| nonnegative(m)) {
            cases.extend(unshift(shifted));
        }
        let (mut lhs, mut rhs, mut pass) = (0u64, 0u64, true);
        for (m, t) in &cases {
            let left = census.fk_with_balance(m, t);
            let shifted: Vec<i64> = m
                .iter()
                .enumerate()
                .map(|(i, &x)| x + 2 * t.get(i).map_or(0, |&ti| i64::from(ti)))
                .collect();
            let right = census.fk_strict(&shifted);
            if left != right {
                pass = false;
                mismatches.push(format!(
                    "{id} k={k} n={n} m={m:?} t={t:?}: {left} vs strict {right}"
                ));
            }
            lhs += left;
            rhs += right;
        }
        let mut v = Verdict::new(id, k, n, BigInt::from(lhs), BigInt::from(rhs));
        v.pass &= pass;
        Ok(v)
    }

    fn strict_merge(&mut self, k: u32, n: u32, mismatches: &mut Vec<String>) -> Result<Verdict> {
        let id = Identity::StrictMerge.id();
        let symbols = self.symbols(k as usize, n)?;
        let mut pass = true;
        let mut forward = 0u64;
        for eta in symbols
            .iter()
            .filter(|e| e.is_strict() && e.cranks().iter().all(|&c| c >= 0))
        {
            forward += 1;
            let m: Vec<u32> = eta.cranks().iter().map(|&c| c as u32).collect();
            let ok = match phi(eta) {
                Ok(s) => {
                    s.is_valid()
                        && s.weight() == n
                        && s.crank()
                            == m.iter().map(|&x| i64::from(x)).sum::<i64>() + i64::from(k) - 1
                        && phi_inverse(&s, &m).ok().as_ref() == Some(eta)
                }
                Err(_) => false,
            };
            if !ok {
                pass = false;
                mismatches.push(format!("{id} k={k} n={n}: merge fails at {eta}"));
            }
        }
        let mut backward = 0u64;
        for s in enumerate_dyson_symbols_with(n, self.exec)? {
            let budget = s.crank() - i64::from(k) + 1;
            if budget < 0 {
                continue;
            }
            for m in compositions(budget as u32, k as usize) {
                backward += 1;
                let ok = match phi_inverse(&s, &m) {
                    Ok(eta) => {
                        eta.is_strict() && eta.weight() == n && phi(&eta).ok().as_ref() == Some(&s)
                    }
                    Err(_) => false,
                };
                if !ok {
                    pass = false;
                    mismatches.push(format!("{id} k={k} n={n} m={m:?}: peeling fails at {s}"));
                }
            }
        }
        let mut v = Verdict::new(id, k, n, BigInt::from(forward), BigInt::from(backward));
        v.pass &= pass;
        Ok(v)
    }

    fn marked_total(&mut self, k: u32, n: u32, _: &mut Vec<String>) -> Result<Verdict> {
        let lhs = BigInt::from(self.symbols(k as usize + 1, n)?.len());
        let rhs = symmetrized_moment(2 * k, &*self.cranks(n)?);
        Ok(Verdict::new(Identity::MarkedTotal.id(), k, n, lhs, rhs))
    }

    fn full_crank_count(
        &mut self,
        k: u32,
        n: u32,
        mismatches: &mut Vec<String>,
    ) -> Result<Verdict> {
        let id = Identity::FullCrankCount.id();
        let census = self.census(k as usize, n)?;
        let cranks = self.cranks(n)?;
        let reach = census
            .by_full_crank
            .keys()
            .map(|m| m.abs())
            .max()
            .unwrap_or(0)
            .max(cranks.max_abs());
        let (mut lhs, mut rhs, mut pass) = (BigInt::zero(), BigInt::zero(), true);
        for m in -reach..=reach {
            let left = BigInt::from(census.full_crank(m));
            let right = full_crank_formula_from(k as usize, m, &cranks);
            if left != right {
                pass = false;
                mismatches.push(format!(
                    "{id} k={k} n={n} m={m}: count {left}, formula {right}"
                ));
            }
            lhs += left;
            rhs += right;
        }
        let mut v = Verdict::new(id, k, n, lhs, rhs);
        v.pass &= pass;
        Ok(v)
    }

    fn solution_series(&mut self, bounds: &Bounds) -> SuiteReport {
        let id = Identity::SolutionSeries.id();
        let max_j = bounds.max_j.or(bounds.max_n).unwrap_or(25);
        let ks: Vec<u32> = bounds.k.map_or_else(|| (1..=4).collect(), |k| vec![k]);
        let mut report = SuiteReport::default();
        for k in ks {
            let series = ck_series(k, max_j);
            for j in 0..=max_j {
                let closed = ck_closed_form(k, j);
                let brute = ck_brute(k, j);
                let mut v = Verdict::new(id, k, j, series[j as usize].clone(), closed.clone());
                if brute != closed {
                    v.pass = false;
                    report.mismatches.push(format!(
                        "{id} k={k} j={j}: closed form {closed}, solution count {brute}"
                    ));
                }
                report.verdicts.push(v);
            }
        }
        report
    }

    fn modular_identity(&mut self, bounds: &Bounds) -> Result<SuiteReport> {
        let triples: Vec<(u32, u32, u32)> =
            if bounds.k.is_some() || bounds.p.is_some() || bounds.r.is_some() {
                vec![(
                    bounds.k.unwrap_or(2),
                    bounds.p.unwrap_or(5),
                    bounds.r.unwrap_or(1),
                )]
            } else {
                vec![(2, 5, 1), (3, 5, 1), (2, 7, 1)]
            };
        let mut report = SuiteReport::default();
        for (k, p, r) in triples {
            for n in bounds.first_n()..=bounds.max_n.unwrap_or(40) {
                let source = if bounds.oracle {
                    NcSource::Enumeration
                } else {
                    NcSource::for_weight(n)
                };
                let mut v = verify_modular_identity_with(k, p, r, n, source, self.exec)?;
                v.identity = format!("{}:{p}^{r}", v.identity);
                if !v.pass {
                    report.mismatches.push(format!(
                        "{} k={k} n={n}: {} of {} congruences hold",
                        v.identity, v.lhs, v.rhs
                    ));
                }
                report.verdicts.push(v);
            }
        }
        Ok(report)
    }
}

/// Every `(m_1, …, m_k)` with `Σ|m_i| ≤ radius`.
pub fn profiles_within(k: usize, radius: i64) -> Vec<Vec<i64>> {
    fn go(k: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for m in -left..=left {
            cur.push(m);
            go(k, left - m.abs(), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, radius, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Ordered ways of writing `total` as `parts` nonnegative integers.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(left: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == parts {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            go(left - x, parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// All `(m, t)` with `m_i + 2t_i = shifted_i` for `i < k`, `m_k = shifted_k`
/// and every entry nonnegative.
fn unshift(shifted: &[i64]) -> Vec<(Vec<i64>, Vec<u32>)> {
    let k = shifted.len();
    let mut out = vec![(Vec::with_capacity(k), Vec::with_capacity(k - 1))];
    for &s in &shifted[..k - 1] {
        out = out
            .into_iter()
            .flat_map(|(m, t)| {
                (0..=s / 2).map(move |ti| {
                    let (mut m, mut t) = (m.clone(), t.clone());
                    m.push(s - 2 * ti);
                    t.push(ti as u32);
                    (m, t)
                })
            })
            .collect();
    }
    for (m, _) in &mut out {
        m.push(shifted[k - 1]);
    }
    out
}

/// Runs one suite with default memoization.
pub fn verify(id: Identity, bounds: &Bounds, exec: Exec) -> Result<SuiteReport> {
    Verifier::new(exec).run(id, bounds)
}
