//! `crankmark`: partition crank tables, Dyson and k-marked Dyson symbols,
//! identity checks and a congruence scanner.
//!
//! Exit status: 0 on success, 1 when a verification fails or a runtime
//! error occurs, 2 on a usage error.

mod output;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use crankmark::congruence::{
    scan_progressions, CrankTableCache, ScanConfig, TableSource, CACHE_DIR_ENV,
};
use crankmark::json::Exact;
use crankmark::marked::enumerate_marked_with;
use crankmark::table::{
    crank_counts_recurrence, crank_counts_with, rank_counts_with, symmetrized_moment,
};
use crankmark::verify::{Bounds, Identity, SuiteReport, Verifier};
use crankmark::{enumerate_dyson_symbols, fullcrank, partition, CountTable, Exec};
use output::{spaced, Format, Table};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "crankmark",
    version,
    about = "Exact crank statistics, Dyson symbols and k-marked Dyson symbols"
)]
#[command(after_help = format!(
    "The scan verb keeps crank tables in $CRANKMARK_CACHE_DIR/crank-tables.json when {CACHE_DIR_ENV} is set."
))]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Partitions of n with their crank and rank.
    Partitions {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=60))]
        n: u32,
    },
    /// M(m, n): partitions of n by crank (n = 1 uses the signed convention).
    CrankTable {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Count without enumerating partitions.
        #[arg(long)]
        fast: bool,
    },
    /// N(m, n): partitions of n by rank.
    RankTable {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Symmetrized crank and rank moments of n.
    Moments {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Moment order; orders 1 to 6 when omitted.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: Option<u32>,
    },
    /// Dyson symbols of n with their cranks.
    Dyson {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=60))]
        n: u32,
        /// Keep only symbols with this crank.
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
    },
    /// k-marked Dyson symbols of n with their statistics.
    EnumerateMarked {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Crank profile filter m_1 … m_k (repeat the flag k times).
        #[arg(long = "m", allow_negative_numbers = true)]
        m: Vec<i64>,
        /// Balanced-number filter t_1 … t_{k-1} (repeat the flag k - 1 times).
        #[arg(long = "t")]
        t: Vec<u32>,
    },
    /// Check an identity over a range of weights.
    ///
    /// IDENTITY is one of cor2.3, thm2.1, thm2.4, thm2.5, thm2.6, thm3.1,
    /// thm4.3, gf-ck, mod-identity, or all. Without bounds each suite runs
    /// over its full default range.
    Verify {
        identity: String,
        /// Only this k.
        #[arg(long)]
        k: Option<u32>,
        /// Only this weight.
        #[arg(long, conflicts_with = "max_n")]
        n: Option<u32>,
        /// Largest weight.
        #[arg(long)]
        max_n: Option<u32>,
        /// Largest coefficient index for gf-ck.
        #[arg(long)]
        max_j: Option<u32>,
        /// Prime for mod-identity.
        #[arg(long)]
        p: Option<u32>,
        /// Exponent for mod-identity.
        #[arg(long)]
        r: Option<u32>,
        /// Enumerate everywhere instead of using faster equivalent counts.
        #[arg(long)]
        oracle: bool,
    },
    /// Search progressions An+B on which crank residues or moments vanish mod p^r.
    Scan {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        /// Also test μ_{2k}(An+B); needs k ≤ (p - 1)/2.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 10)]
        max_a: u32,
        #[arg(long, default_value_t = 80)]
        max_n: u32,
        /// Progressions with fewer points in range are skipped.
        #[arg(long, default_value_t = 3)]
        min_points: u32,
        /// Report progressions where the congruence fails too.
        #[arg(long)]
        include_failures: bool,
        /// Build crank tables by enumerating partitions.
        #[arg(long)]
        oracle: bool,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<crankmark::Error> for Failure {
    fn from(e: crankmark::Error) -> Self {
        match e {
            crankmark::Error::InvalidArgument(_) | crankmark::Error::EmptyPartition => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn exec_for(threads: Option<u32>) -> Result<Exec, Failure> {
    match threads {
        Some(1) => Ok(Exec::Sequential),
        #[cfg(feature = "parallel")]
        Some(t) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t as usize)
                .build_global()
                .map_err(|e| Failure::Runtime(e.to_string()))?;
            Ok(Exec::Parallel)
        }
        _ => Ok(Exec::default()),
    }
}

/// Returns `Ok(false)` when a verification failed.
fn run(cli: Cli) -> Result<bool, Failure> {
    let exec = exec_for(cli.threads)?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let format = cli.format;
    let ok = match cli.command {
        Command::Partitions { n } => partitions(n, exec)?.emit(format, &mut out).map(|_| true)?,
        Command::CrankTable { n, fast } => {
            let table = if fast {
                crank_counts_recurrence(n)?
            } else {
                crank_counts_with(n, exec)?
            };
            emit_count_table(&table, format, &mut out)?;
            true
        }
        Command::RankTable { n } => {
            emit_count_table(&rank_counts_with(n, exec)?, format, &mut out)?;
            true
        }
        Command::Moments { n, k } => moments(n, k, exec)?.emit(format, &mut out).map(|_| true)?,
        Command::Dyson { n, m } => dyson(n, m)?.emit(format, &mut out).map(|_| true)?,
        Command::EnumerateMarked { k, n, m, t } => marked(k, n, &m, &t, exec)?
            .emit(format, &mut out)
            .map(|_| true)?,
        Command::Verify {
            identity,
            k,
            n,
            max_n,
            max_j,
            p,
            r,
            oracle,
        } => {
            let bounds = Bounds {
                k,
                min_n: n,
                max_n: n.or(max_n),
                max_j,
                p,
                r,
                oracle,
            };
            verify(&identity, &bounds, exec, format, &mut out)?
        }
        Command::Scan {
            p,
            r,
            k,
            max_a,
            max_n,
            min_points,
            include_failures,
            oracle,
        } => {
            let config = ScanConfig {
                p,
                r,
                k,
                a_max: max_a,
                n_max: max_n,
                min_points,
                include_failures,
            };
            scan(&config, oracle, exec)?
                .emit(format, &mut out)
                .map(|_| true)?
        }
    };
    out.flush()?;
    Ok(ok)
}

fn partitions(n: u32, exec: Exec) -> Result<Table, Failure> {
    let mut table = Table::new(&["parts", "crank", "rank"]);
    for lambda in partition::enumerate_partitions_with(n, exec) {
        let (crank, rank) = (lambda.crank()?, lambda.rank()?);
        table.push(
            json!({"parts": lambda.parts(), "crank": crank, "rank": rank}),
            vec![spaced(lambda.parts()), crank.to_string(), rank.to_string()],
            format!("{lambda}  crank={crank}  rank={rank}"),
        );
    }
    Ok(table)
}

fn emit_count_table(
    table: &CountTable,
    format: Format,
    out: &mut impl Write,
) -> Result<(), Failure> {
    match format {
        Format::Json | Format::Jsonl => writeln!(out, "{}", table.to_json()?)?,
        Format::Csv => write!(out, "{}", table.to_csv())?,
        Format::Text => {
            let cells: Vec<String> = table.iter().map(|(m, c)| format!("{m}: {c}")).collect();
            writeln!(out, "{{{}}}", cells.join(", "))?;
        }
    }
    Ok(())
}

fn moments(n: u32, k: Option<u32>, exec: Exec) -> Result<Table, Failure> {
    let cranks = crank_counts_with(n, exec)?;
    let ranks = rank_counts_with(n, exec)?;
    let mut table = Table::new(&["k", "n", "crank_moment", "rank_moment"]);
    for k in k.map_or(1..=6, |k| k..=k) {
        let mu = symmetrized_moment(k, &cranks);
        let eta = symmetrized_moment(k, &ranks);
        table.push(
            json!({"k": k, "n": n, "crank_moment": big(Exact(mu.clone())), "rank_moment": big(Exact(eta.clone()))}),
            vec![k.to_string(), n.to_string(), mu.to_string(), eta.to_string()],
            format!("k={k} n={n}  mu={mu}  eta={eta}"),
        );
    }
    Ok(table)
}

fn big(v: Exact) -> Value {
    serde_json::to_value(v).expect("integers serialize")
}

fn dyson(n: u32, m: Option<i64>) -> Result<Table, Failure> {
    let mut table = Table::new(&["alpha", "beta", "crank"]);
    for s in enumerate_dyson_symbols(n)? {
        let crank = s.crank();
        if m.is_some_and(|m| m != crank) {
            continue;
        }
        table.push(
            json!({"alpha": s.alpha.parts(), "beta": s.beta.parts(), "crank": crank}),
            vec![
                spaced(s.alpha.parts()),
                spaced(s.beta.parts()),
                crank.to_string(),
            ],
            format!("{s}  crank={crank}"),
        );
    }
    Ok(table)
}

fn marked(k: u32, n: u32, m: &[i64], t: &[u32], exec: Exec) -> Result<Table, Failure> {
    let k = k as usize;
    if !m.is_empty() && m.len() != k {
        return Err(Failure::Usage(format!(
            "--m given {} times, expected {k}",
            m.len()
        )));
    }
    if !t.is_empty() && t.len() + 1 != k {
        return Err(Failure::Usage(format!(
            "--t given {} times, expected {}",
            t.len(),
            k - 1
        )));
    }
    let mut table = Table::new(&["symbol", "cranks", "balances", "full_crank", "strict"]);
    for eta in enumerate_marked_with(k, n, exec)? {
        let st = eta.statistics();
        let balances = &st.balances[..k - 1];
        if (!m.is_empty() && st.cranks != m) || (!t.is_empty() && balances != t) {
            continue;
        }
        let fc = fullcrank::full_crank(&eta)?;
        let strict = eta.is_strict();
        let mut j = serde_json::to_value(&eta).map_err(|e| Failure::Runtime(e.to_string()))?;
        j["cranks"] = json!(st.cranks);
        j["balances"] = json!(balances);
        j["full_crank"] = json!(fc);
        j["strict"] = json!(strict);
        table.push(
            j,
            vec![
                eta.to_string(),
                spaced(&st.cranks),
                spaced(balances),
                fc.to_string(),
                strict.to_string(),
            ],
            format!("{eta}  c={:?} b={balances:?} FC={fc}", st.cranks),
        );
    }
    Ok(table)
}

fn verify(
    name: &str,
    bounds: &Bounds,
    exec: Exec,
    format: Format,
    out: &mut impl Write,
) -> Result<bool, Failure> {
    let ids: Vec<Identity> = if name == "all" {
        Identity::ALL.to_vec()
    } else {
        vec![name
            .parse::<Identity>()
            .map_err(|e| Failure::Usage(e.to_string()))?]
    };
    let mut verifier = Verifier::new(exec);
    let mut report = SuiteReport::default();
    let mut summaries = Vec::new();
    for id in ids {
        let started = Instant::now();
        eprintln!("verifying {id} ...");
        let suite = verifier.run(id, bounds)?;
        let failed = suite.verdicts.iter().filter(|v| !v.pass).count();
        eprintln!(
            "  {} cases, {failed} failed, {:.1?}",
            suite.verdicts.len(),
            started.elapsed()
        );
        for line in &suite.mismatches {
            eprintln!("  mismatch: {line}");
        }
        summaries.push((id, suite.verdicts.len(), failed));
        report.verdicts.extend(suite.verdicts);
        report.mismatches.extend(suite.mismatches);
    }
    let mut table = Table::new(&["identity", "k", "n", "lhs", "rhs", "pass"]);
    for v in &report.verdicts {
        table.push(
            serde_json::to_value(v).map_err(|e| Failure::Runtime(e.to_string()))?,
            vec![
                v.identity.clone(),
                v.k.to_string(),
                v.n.to_string(),
                v.lhs.to_string(),
                v.rhs.to_string(),
                v.pass.to_string(),
            ],
            v.to_string(),
        );
    }
    table.emit(format, out)?;
    if format == Format::Text {
        for (id, cases, failed) in summaries {
            let status = if failed == 0 {
                "all pass".to_string()
            } else {
                format!("{failed} FAILED")
            };
            writeln!(out, "summary {id}: {cases} cases, {status}")?;
        }
    }
    Ok(report.pass())
}

fn scan(config: &ScanConfig, oracle: bool, exec: Exec) -> Result<Table, Failure> {
    let source = if oracle {
        TableSource::Enumeration
    } else {
        TableSource::Recurrence
    };
    let started = Instant::now();
    eprintln!("building crank tables up to n = {} ...", config.n_max);
    let cache = CrankTableCache::from_env(config.n_max, source, exec)?;
    eprintln!(
        "  done in {:.1?}; scanning A ≤ {}",
        started.elapsed(),
        config.a_max
    );
    let mut table = Table::new(&["p", "r", "A", "B", "kind", "k", "n_max", "holds", "points"]);
    for w in scan_progressions(config, &cache, exec)? {
        let j = serde_json::to_value(&w).map_err(|e| Failure::Runtime(e.to_string()))?;
        let kind = j["kind"].as_str().unwrap_or_default().to_string();
        let k = w.k.map(|k| k.to_string()).unwrap_or_default();
        table.push(
            j,
            vec![
                w.p.to_string(),
                w.r.to_string(),
                w.a.to_string(),
                w.b.to_string(),
                kind.clone(),
                k.clone(),
                w.n_max.to_string(),
                w.holds.to_string(),
                w.points.to_string(),
            ],
            format!(
                "{}n+{} {kind}{} mod {}^{}: {} on {} points up to {}",
                w.a,
                w.b,
                if k.is_empty() {
                    String::new()
                } else {
                    format!(" k={k}")
                },
                w.p,
                w.r,
                if w.holds { "holds" } else { "fails" },
                w.points,
                w.n_max
            ),
        );
    }
    Ok(table)
}
