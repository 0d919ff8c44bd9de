//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness; exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use crankmark::congruence::crank_residue_table;
use crankmark::dyson::{enumerate_dyson_symbols_direct, to_dyson_symbol};
use crankmark::marked::{phi, phi_inverse};
use crankmark::table::{crank_counts, crank_moment, rank_moment};
use crankmark::verify::{Bounds, Identity, Verifier};
use crankmark::{
    enumerate_dyson_symbols, enumerate_marked, DysonSymbol, Exec, MarkedDysonSymbol, Partition,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// Independent oracles.

fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(left: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in (1..=cap.min(left)).rev() {
            cur.push(x);
            go(left - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn crank(parts: &[u32]) -> i64 {
    let ones = parts.iter().filter(|&&x| x == 1).count() as i64;
    if ones == 0 {
        i64::from(parts[0])
    } else {
        parts.iter().filter(|&&x| i64::from(x) > ones).count() as i64 - ones
    }
}

fn crank_histogram(n: u32) -> BTreeMap<i64, i64> {
    let mut h = BTreeMap::new();
    for p in partitions(n) {
        *h.entry(crank(&p)).or_insert(0) += 1;
    }
    h
}

/// `C(x, b)` as the polynomial `x(x-1)…(x-b+1)/b!` over the rationals.
fn binomial(x: i64, b: u32) -> BigInt {
    let mut acc = BigRational::one();
    for i in 0..b {
        acc *= BigRational::new(BigInt::from(x - i64::from(i)), BigInt::from(i + 1));
    }
    assert!(acc.is_integer());
    acc.to_integer()
}

fn moment(order: u32, hist: &BTreeMap<i64, i64>) -> BigInt {
    let shift = i64::from(order.saturating_sub(1) / 2);
    hist.iter()
        .map(|(&m, &c)| binomial(m + shift, order) * c)
        .sum()
}

/// p(n) by Euler's pentagonal-number recurrence.
fn euler_partition_counts(max: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); max + 1];
    p[0] = BigInt::one();
    for n in 1..=max {
        let mut total = BigInt::zero();
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            total += &p[n - g1] * sign;
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= n {
                total += &p[n - g2] * sign;
            }
        }
        p[n] = total;
    }
    p
}

fn run_suite(verifier: &mut Verifier, id: Identity, bounds: &Bounds) -> Outcome {
    let report = verifier.run(id, bounds).map_err(|e| e.to_string())?;
    if report.verdicts.is_empty() {
        return Err(format!("{id}: no cases ran"));
    }
    if report.pass() {
        Ok(())
    } else {
        let failed: Vec<String> = report
            .verdicts
            .iter()
            .filter(|v| !v.pass)
            .map(|v| v.to_string())
            .collect();
        Err(format!(
            "{id}: {} failed; first: {:?}; {:?}",
            failed.len(),
            failed.first(),
            report.mismatches.first()
        ))
    }
}

fn sym(alpha: &[u32], beta: &[u32]) -> DysonSymbol {
    DysonSymbol::from_parts(alpha, beta).expect("valid parts")
}

/// `(α^(2), β^(2), p_1, α^(1), β^(1))`.
type Row = (&'static [u32], &'static [u32], u32, &'static [u32], &'static [u32]);

/// The 35 two-marked symbols of weight 5, top level first.
#[rustfmt::skip]
const TABLE_OF_FIVE: [Row; 35] = [
    (&[], &[1, 1, 1, 1], 1, &[], &[]),
    (&[1], &[1], 1, &[], &[]),
    (&[2, 2], &[], 1, &[], &[]),
    (&[], &[], 2, &[1], &[2]),
    (&[], &[1, 1], 1, &[1], &[1]),
    (&[], &[], 1, &[1, 1], &[1, 1]),
    (&[1, 1, 1, 1], &[], 1, &[], &[]),
    (&[], &[2, 2], 1, &[], &[]),
    (&[1, 1], &[], 1, &[1], &[1]),
    (&[], &[], 1, &[1, 1, 1, 1], &[]),
    (&[1, 1], &[], 1, &[1, 1], &[]),
    (&[], &[1, 1, 1], 1, &[1], &[]),
    (&[2], &[], 2, &[1], &[]),
    (&[], &[1], 1, &[1, 1, 1], &[]),
    (&[1, 1, 1], &[], 1, &[1], &[]),
    (&[1], &[], 1, &[1, 1], &[1]),
    (&[1], &[], 1, &[1, 1, 1], &[]),
    (&[], &[1, 1], 1, &[1, 1], &[]),
    (&[], &[], 2, &[2, 1], &[]),
    (&[], &[], 1, &[1, 1, 1], &[1]),
    (&[], &[1], 1, &[1, 1], &[1]),
    (&[], &[2], 2, &[1], &[]),
    (&[1], &[], 1, &[1], &[1, 1]),
    (&[], &[], 1, &[1], &[1, 1, 1]),
    (&[], &[], 1, &[], &[1, 1, 1, 1]),
    (&[1], &[], 1, &[], &[1, 1, 1]),
    (&[], &[1, 1], 1, &[], &[1, 1]),
    (&[], &[], 2, &[], &[2, 1]),
    (&[1, 1], &[], 1, &[], &[1, 1]),
    (&[], &[1, 1, 1], 1, &[], &[1]),
    (&[2], &[], 2, &[], &[1]),
    (&[], &[1], 1, &[], &[1, 1, 1]),
    (&[1, 1, 1], &[], 1, &[], &[1]),
    (&[], &[1], 1, &[1], &[1, 1]),
    (&[], &[2], 2, &[], &[1]),
];

fn golden_values() -> Outcome {
    ensure(
        crank_moment(2, 5).map_err(|e| e.to_string())? == BigInt::from(35),
        || "μ_2(5) ≠ 35".into(),
    )?;
    let mut listed: Vec<MarkedDysonSymbol> = TABLE_OF_FIVE
        .iter()
        .map(|&(a2, b2, p, a1, b1)| {
            MarkedDysonSymbol::from_parts(&[(a1, b1), (a2, b2)], &[p]).expect("shape")
        })
        .collect();
    let mut found = enumerate_marked(2, 5).map_err(|e| e.to_string())?;
    ensure(found.len() == 35, || {
        format!("enumerate_marked(2, 5) gave {} symbols", found.len())
    })?;
    listed.sort();
    found.sort();
    ensure(listed == found, || {
        let extra: Vec<String> = found
            .iter()
            .filter(|e| !listed.contains(e))
            .map(|e| e.to_string())
            .collect();
        let missing: Vec<String> = listed
            .iter()
            .filter(|e| !found.contains(e))
            .map(|e| e.to_string())
            .collect();
        format!("table mismatch: unlisted {extra:?}, not found {missing:?}")
    })?;
    let mut dyson = enumerate_dyson_symbols(4).map_err(|e| e.to_string())?;
    let mut expected = vec![
        sym(&[], &[2, 2]),
        sym(&[], &[1, 1, 1, 1]),
        sym(&[1], &[2]),
        sym(&[2, 2], &[]),
        sym(&[1, 1, 1, 1], &[]),
    ];
    dyson.sort();
    expected.sort();
    ensure(dyson == expected, || {
        format!("Dyson symbols of 4: {dyson:?}")
    })
}

fn example_97() -> MarkedDysonSymbol {
    MarkedDysonSymbol::from_parts(
        &[
            (&[1, 1], &[2, 1, 1]),
            (&[3, 3, 2], &[3, 2, 2]),
            (&[5, 5, 4], &[4]),
        ],
        &[2, 4],
    )
    .expect("shape")
}

fn example_object() -> Outcome {
    let eta = example_97();
    ensure(eta.is_valid(), || "example is not valid".into())?;
    let st = eta.statistics();
    ensure(st.cranks == [-1, 0, 2], || {
        format!("cranks {:?}", st.cranks)
    })?;
    ensure(st.balances == [1, 1, 0], || {
        format!("balances {:?}", st.balances)
    })?;
    ensure(eta.weight() == 97, || format!("weight {}", eta.weight()))
}

fn peeling_example() -> Outcome {
    let s = sym(&[6, 6, 3, 3, 3, 3, 2, 2, 1, 1, 1], &[5, 5, 4, 2, 1, 1, 1]);
    let expected = MarkedDysonSymbol::from_parts(
        &[
            (&[1], &[]),
            (&[3, 3, 2, 2, 1], &[2, 1, 1, 1]),
            (&[6, 6, 3], &[5, 5, 4]),
        ],
        &[1, 3],
    )
    .expect("shape");
    ensure(s.weight() == 127 && expected.weight() == 127, || {
        "weights are not 127".into()
    })?;
    let eta = phi_inverse(&s, &[1, 1, 0]).map_err(|e| e.to_string())?;
    ensure(eta == expected, || format!("peeled {eta}"))?;
    let back = phi(&eta).map_err(|e| e.to_string())?;
    ensure(back == s, || format!("merged back to {back}"))
}

fn dyson_crank_negation(verifier: &mut Verifier) -> Outcome {
    for n in 2..=30 {
        let m = crank_histogram(n);
        let mut f1: BTreeMap<i64, i64> = BTreeMap::new();
        for s in enumerate_dyson_symbols_direct(n) {
            *f1.entry(s.crank()).or_insert(0) += 1;
        }
        for c in -(n as i64)..=n as i64 {
            let left = m.get(&-c).copied().unwrap_or(0);
            let right = f1.get(&c).copied().unwrap_or(0);
            ensure(left == right, || {
                format!("n={n} m={c}: M(-m,n)={left}, F1(m;n)={right}")
            })?;
        }
    }
    for n in 2..=25 {
        for parts in partitions(n) {
            let lambda = Partition::new(parts.clone()).map_err(|e| e.to_string())?;
            let s = to_dyson_symbol(&lambda).map_err(|e| e.to_string())?;
            ensure(
                s.is_valid() && s.weight() == n && s.crank() == -crank(&parts),
                || format!("Ω fails at {lambda}"),
            )?;
        }
    }
    run_suite(verifier, Identity::DysonCrank, &Bounds::default())
}

fn marked_total(verifier: &mut Verifier) -> Outcome {
    for (k, max_n) in [(1u32, 14u32), (2, 10)] {
        for n in 2..=max_n {
            let count = enumerate_marked(k as usize + 1, n)
                .map_err(|e| e.to_string())?
                .len();
            let mu = moment(2 * k, &crank_histogram(n));
            ensure(BigInt::from(count) == mu, || {
                format!("k={k} n={n}: {count} symbols, μ={mu}")
            })?;
        }
    }
    run_suite(verifier, Identity::MarkedTotal, &Bounds::default())
}

fn solution_series(verifier: &mut Verifier) -> Outcome {
    for k in 1..=4u32 {
        for j in 0..=25i64 {
            let closed =
                binomial(2 * i64::from(k) + j, 2 * k) + binomial(2 * i64::from(k) + j - 1, 2 * k);
            let lib = crankmark::fullcrank::ck_closed_form(k, j as u32);
            ensure(closed == lib, || format!("k={k} j={j}: {lib} vs {closed}"))?;
        }
    }
    run_suite(verifier, Identity::SolutionSeries, &Bounds::default())
}

fn sanity() -> Outcome {
    for n in 1..=20 {
        for k in 0..=3 {
            let order = 2 * k + 1;
            let mu = crank_moment(order, n).map_err(|e| e.to_string())?;
            let eta = rank_moment(order, n).map_err(|e| e.to_string())?;
            ensure(mu.is_zero() && eta.is_zero(), || {
                format!("odd moments at order {order}, n={n}: {mu}, {eta}")
            })?;
        }
    }
    let p = euler_partition_counts(40);
    for n in 1..=40u32 {
        let total = crank_counts(n).map_err(|e| e.to_string())?.total();
        ensure(total == p[n as usize], || {
            format!("Σ M(m,{n}) = {total}, p({n}) = {}", p[n as usize])
        })?;
    }
    for n in (4..=49).step_by(5) {
        let classes = crank_residue_table(5, n).map_err(|e| e.to_string())?;
        ensure(classes.iter().all(|c| *c == classes[0]), || {
            format!("M(i,5;{n}) = {classes:?}")
        })?;
        let mut brute = [0i64; 5];
        for parts in partitions(n) {
            brute[crank(&parts).rem_euclid(5) as usize] += 1;
        }
        ensure(brute.iter().all(|&c| BigInt::from(c) == classes[0]), || {
            format!("brute M(i,5;{n}) = {brute:?}")
        })?;
    }
    Ok(())
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    check: Box<dyn FnOnce(&mut Verifier) -> Outcome>,
}

fn criterion(
    name: &'static str,
    budget_secs: u64,
    check: impl FnOnce(&mut Verifier) -> Outcome + 'static,
) -> Criterion {
    Criterion {
        name,
        budget: Duration::from_secs(budget_secs),
        check: Box::new(check),
    }
}

fn main() -> ExitCode {
    let minutes = 600;
    let criteria = vec![
        criterion(
            "golden values: μ_2(5), the 35 symbols of 5, the Dyson symbols of 4",
            1,
            |_| golden_values(),
        ),
        criterion("worked 3-marked example of weight 97", 1, |_| {
            example_object()
        }),
        criterion("peeling example of weight 127", 1, |_| peeling_example()),
        criterion(
            "M(-m,n) = F_1(m;n) for n ≤ 30, crank negation for n ≤ 25",
            30,
            dyson_crank_negation,
        ),
        criterion(
            "profile counts match the F_1 sum (k=2 n≤14, k=3 n≤12)",
            minutes,
            |v| run_suite(v, Identity::ProfileCount, &Bounds::default()),
        ),
        criterion(
            "crank sign flips and the mirror map (k≤3, n≤12)",
            minutes,
            |v| run_suite(v, Identity::MirrorSymmetry, &Bounds::default()),
        ),
        criterion(
            "balance-refined counts equal shifted strict counts (k=2,3, n≤12)",
            minutes,
            |v| run_suite(v, Identity::BalanceShift, &Bounds::default()),
        ),
        criterion(
            "(k+1)-marked totals equal μ_2k (k=1 n≤14, k=2 n≤10)",
            minutes,
            marked_total,
        ),
        criterion(
            "full-crank counts equal binomial × M (k≤3, n≤14)",
            minutes,
            |v| run_suite(v, Identity::FullCrankCount, &Bounds::default()),
        ),
        criterion(
            "series, closed form and solution count of c_k(j) (k≤4, j≤25)",
            1,
            solution_series,
        ),
        criterion(
            "full-crank residues mod p^r (n≤14 enumerated, n≤40 closed form)",
            minutes,
            |v| run_suite(v, Identity::ModularIdentity, &Bounds::default()),
        ),
        criterion(
            "odd moments vanish, Σ M = p(n), crank equidistribution mod 5",
            60,
            |_| sanity(),
        ),
    ];
    let mut verifier = Verifier::new(Exec::default());
    let mut failed = 0;
    for (i, c) in criteria.into_iter().enumerate() {
        let started = Instant::now();
        let outcome = (c.check)(&mut verifier);
        let elapsed = started.elapsed();
        let outcome = outcome.and_then(|_| {
            ensure(elapsed <= c.budget, || {
                format!("took {elapsed:.2?}, budget {:?}", c.budget)
            })
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {} ({elapsed:.2?})", i + 1, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {} ({elapsed:.2?}): {why}", i + 1, c.name);
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
