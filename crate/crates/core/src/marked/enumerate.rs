//! Depth-first generation of k-marked Dyson symbols of a given weight.
//!
//! Markers are chosen first, then each level's pair bottom-up under its part
//! range. `Σ(|α^(i)| + |β^(i)|) + Σ p_i` never decreases along a branch and
//! the product term of the weight is nonnegative, so any branch whose
//! running total exceeds `n` is cut. The product term is only known once
//! every level is placed, so the exact weight is checked at the leaves.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{MarkedDysonSymbol, Pair};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::partition::Partition;

/// Every k-marked Dyson symbol of weight `n`, each once, in a fixed order:
/// by marker sequence, then level 1, level 2, … with partitions in
/// decreasing lexicographic order.
pub fn enumerate_marked(k: usize, n: u32) -> Result<Vec<MarkedDysonSymbol>> {
    enumerate_marked_with(k, n, Exec::default())
}

pub fn enumerate_marked_with(k: usize, n: u32, exec: Exec) -> Result<Vec<MarkedDysonSymbol>> {
    if k == 0 || n == 0 {
        return Err(Error::invalid("enumeration needs k ≥ 1 and n ≥ 1"));
    }
    let lists = PartitionLists::default();
    let mut units = Vec::new();
    for markers in marker_sequences(k - 1, n) {
        let spent: u32 = markers.iter().sum();
        let (lo, hi) = level_range(&markers, 1);
        for pair in pairs(&lists, lo, hi, n - spent) {
            units.push((markers.clone(), pair));
        }
    }
    let found = exec.flat_map(units, |(markers, first)| {
        let mut search = Search {
            k,
            n,
            markers: &markers,
            lists: &lists,
            levels: Vec::with_capacity(k),
            out: Vec::new(),
        };
        let spent = markers.iter().sum::<u32>() + first.alpha.weight() + first.beta.weight();
        search.levels.push(first);
        search.descend(spent);
        search.out
    });
    Ok(found)
}

/// Nondecreasing sequences `1 ≤ p_1 ≤ … ≤ p_len` with sum at most `budget`.
fn marker_sequences(len: usize, budget: u32) -> Vec<Vec<u32>> {
    fn go(len: usize, min: u32, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let remaining = (len - cur.len()) as u32;
        // each of the remaining markers is at least `p`
        let mut p = min;
        while p * remaining <= budget {
            cur.push(p);
            go(len, p, budget - p, cur, out);
            cur.pop();
            p += 1;
        }
    }
    let mut out = Vec::new();
    go(len, 1, budget, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Part range of level `i` (1-based); `None` for an open top.
fn level_range(markers: &[u32], i: usize) -> (u32, Option<u32>) {
    let lo = if i == 1 { 1 } else { markers[i - 2] };
    let hi = markers.get(i - 1).copied();
    (lo, hi)
}

struct Search<'a> {
    k: usize,
    n: u32,
    markers: &'a [u32],
    lists: &'a PartitionLists,
    levels: Vec<Pair>,
    out: Vec<MarkedDysonSymbol>,
}

impl Search<'_> {
    fn descend(&mut self, spent: u32) {
        if self.levels.len() == self.k {
            let eta = MarkedDysonSymbol::from_raw(self.levels.clone(), self.markers.to_vec());
            if eta.is_valid() && eta.weight() == self.n {
                self.out.push(eta);
            }
            return;
        }
        let i = self.levels.len() + 1;
        let (lo, hi) = level_range(self.markers, i);
        for pair in pairs(self.lists, lo, hi, self.n - spent) {
            if i == self.k && !top_shape_possible(&pair, lo) {
                continue;
            }
            let cost = pair.alpha.weight() + pair.beta.weight();
            self.levels.push(pair);
            self.descend(spent + cost);
            self.levels.pop();
        }
    }
}

/// Cheap prefilter for the top level's shape condition; the full check
/// (which may look one level down) runs at the leaf.
fn top_shape_possible(pair: &Pair, floor: u32) -> bool {
    let (a, b) = (pair.alpha.parts(), pair.beta.parts());
    match (a.len(), b.len()) {
        (1, _) => a[0] == floor,
        (la, _) if la > 1 => a[0] == a[1],
        (0, 1) => b[0] == floor,
        (0, lb) if lb >= 2 => b[0] == b[1],
        _ => true,
    }
}

/// All pairs `(α, β)` with parts in range and `|α| + |β| ≤ budget`.
fn pairs(lists: &PartitionLists, lo: u32, hi: Option<u32>, budget: u32) -> Vec<Pair> {
    let all = lists.get(lo, hi, budget);
    let mut out = Vec::new();
    for a in all.iter() {
        for b in all.iter() {
            if a.weight() + b.weight() <= budget {
                out.push(Pair::new(a.clone(), b.clone()));
            }
        }
    }
    out
}

type ListKey = (u32, Option<u32>, u32);

/// Memoized lists of partitions with parts in `[lo, hi]` and weight at
/// most `budget`, in depth-first order starting from the empty partition.
#[derive(Default)]
struct PartitionLists {
    cache: Mutex<HashMap<ListKey, Arc<Vec<Partition>>>>,
}

impl PartitionLists {
    fn get(&self, lo: u32, hi: Option<u32>, budget: u32) -> Arc<Vec<Partition>> {
        let key = (lo, hi, budget);
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return Arc::clone(hit);
        }
        let mut out = Vec::new();
        let mut cur = Vec::new();
        let top = hi.unwrap_or(budget).min(budget);
        bounded(lo, top, budget, &mut cur, &mut out);
        let list = Arc::new(out);
        self.cache
            .lock()
            .expect("cache lock")
            .insert(key, Arc::clone(&list));
        list
    }
}

fn bounded(lo: u32, cap: u32, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    out.push(Partition::from_sorted_unchecked(cur.clone()));
    let mut x = cap.min(budget);
    while x >= lo && x >= 1 {
        cur.push(x);
        bounded(lo, x, budget - x, cur, out);
        cur.pop();
        x -= 1;
    }
}
