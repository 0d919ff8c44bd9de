use std::sync::OnceLock;

use crankmark::congruence::{
    residue_classes, scan_progressions, CrankTableCache, ScanConfig, TableSource,
};
use crankmark::fullcrank::{count_full_crank, full_crank_formula};
use crankmark::marked::{mirror, phi, phi_inverse};
use crankmark::table::crank_counts_recurrence;
use crankmark::{
    crank_counts, enumerate_marked, from_dyson_symbol, gen_binomial, partition_count,
    to_dyson_symbol, CountTable, Exec, MarkedDysonSymbol, Partition,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn rational_binomial(a: i64, b: u32) -> BigInt {
    let mut acc = BigRational::one();
    for i in 0..b {
        acc *= BigRational::new(BigInt::from(a - i64::from(i)), BigInt::from(i + 1));
    }
    acc.to_integer()
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..12, 1..14).prop_map(|v| Partition::from_unsorted(v).unwrap())
}

/// Every marked symbol with `k ∈ {2, 3}` and `n ≤ 8`, enumerated once.
fn marked_pool() -> &'static [MarkedDysonSymbol] {
    static POOL: OnceLock<Vec<MarkedDysonSymbol>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut all = Vec::new();
        for k in 2..=3 {
            for n in 2..=8 {
                all.extend(enumerate_marked(k, n).unwrap());
            }
        }
        all
    })
}

proptest! {
    #[test]
    fn binomial_matches_rational_polynomial(a in -20i64..=20, b in 0u32..=10) {
        prop_assert_eq!(gen_binomial(a, b), rational_binomial(a, b));
    }

    #[test]
    fn conjugation_is_an_involution(lambda in partition()) {
        let once = lambda.conjugate();
        prop_assert_eq!(once.weight(), lambda.weight());
        prop_assert_eq!(once.conjugate(), lambda);
    }

    #[test]
    fn dyson_map_round_trips_and_negates_crank(lambda in partition()) {
        let s = to_dyson_symbol(&lambda).unwrap();
        prop_assert!(s.is_valid());
        prop_assert_eq!(s.weight(), lambda.weight());
        prop_assert_eq!(s.crank(), -lambda.crank().unwrap());
        prop_assert_eq!(from_dyson_symbol(&s).unwrap(), lambda);
    }

    #[test]
    fn mirror_negates_one_crank_and_is_an_involution(idx in any::<prop::sample::Index>(), level in 0usize..3) {
        let eta = idx.get(marked_pool());
        let j = level % eta.k() + 1;
        let c = eta.cranks();
        prop_assume!(c[j - 1] != 0);
        let image = mirror(eta, j).unwrap();
        prop_assert!(image.is_valid());
        prop_assert_eq!(image.weight(), eta.weight());
        let mut expected = c.clone();
        expected[j - 1] = -expected[j - 1];
        prop_assert_eq!(image.cranks(), expected);
        prop_assert_eq!(&mirror(&image, j).unwrap(), eta);
    }

    #[test]
    fn peeling_inverts_merging(idx in any::<prop::sample::Index>()) {
        let strict: Vec<&MarkedDysonSymbol> = marked_pool()
            .iter()
            .filter(|e| e.is_strict() && e.cranks().iter().all(|&c| c >= 0))
            .collect();
        let eta = *idx.get(&strict);
        let s = phi(eta).unwrap();
        prop_assert_eq!(s.weight(), eta.weight());
        let m: Vec<u32> = eta.cranks().iter().map(|&c| c as u32).collect();
        prop_assert_eq!(&phi_inverse(&s, &m).unwrap(), eta);
    }

    #[test]
    fn residue_classes_partition_the_total(n in 1u32..=30, t in 1u64..=12) {
        let table = crank_counts(n).unwrap();
        let classes = residue_classes(&table, t);
        prop_assert_eq!(classes.len() as u64, t);
        prop_assert_eq!(classes.into_iter().sum::<BigInt>(), partition_count(n));
    }

    #[test]
    fn full_crank_counts_reflect(k in 1usize..=3, m in 0i64..=9, n in 2u32..=8) {
        let reflected = BigInt::from(count_full_crank(k, -m, n).unwrap());
        let m_count = crank_counts(n).unwrap().get(m);
        prop_assert_eq!(reflected, gen_binomial(m + k as i64 - 1, 2 * k as u32 - 2) * m_count);
        prop_assert_eq!(BigInt::from(count_full_crank(k, m, n).unwrap()), full_crank_formula(k, m, n).unwrap());
    }
}

#[test]
fn recurrence_matches_enumeration() {
    for n in 1..=30 {
        assert_eq!(
            crank_counts_recurrence(n).unwrap(),
            crank_counts(n).unwrap(),
            "n = {n}"
        );
    }
}

#[test]
fn count_table_json_round_trip() {
    let table = crank_counts(12).unwrap();
    let back = CountTable::from_json(&table.to_json().unwrap()).unwrap();
    assert_eq!(back, table);
}

#[test]
fn scanner_is_deterministic_across_modes() {
    let cache = CrankTableCache::compute(60, TableSource::Recurrence, Exec::Parallel).unwrap();
    let mut config = ScanConfig::new(5, 1, 10, 60);
    config.k = Some(1);
    config.include_failures = true;
    let first = scan_progressions(&config, &cache, Exec::Parallel).unwrap();
    let again = scan_progressions(&config, &cache, Exec::Parallel).unwrap();
    let sequential = scan_progressions(&config, &cache, Exec::Sequential).unwrap();
    assert!(!first.is_empty());
    assert_eq!(first, again);
    assert_eq!(first, sequential);
    assert!(first
        .iter()
        .any(|w| w.a == 5 && w.b == 4 && w.k == Some(1) && w.holds));
}
