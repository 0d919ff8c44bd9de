//! Integer partitions, their streaming enumeration, and the rank and crank
//! statistics.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;

/// A weakly decreasing sequence of positive integers.
///
/// Serializes as the bare array of parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
    weight: u32,
}

impl Partition {
    /// Builds a partition from parts that are already weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let ordered = parts.windows(2).all(|w| w[0] >= w[1]);
        if !ordered || parts.contains(&0) {
            return Err(Error::MalformedPartition(parts));
        }
        Ok(Self::from_sorted_unchecked(parts))
    }

    /// Builds a partition from positive parts in any order.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        let weight = parts.iter().sum();
        Partition { parts, weight }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Largest part, or `None` for the empty partition.
    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    /// The `i`-th part, 1-based, if it exists.
    pub fn part(&self, i: usize) -> Option<u32> {
        i.checked_sub(1).and_then(|j| self.parts.get(j)).copied()
    }

    /// Number of parts strictly greater than `x`.
    pub fn count_greater(&self, x: u32) -> usize {
        self.parts.partition_point(|&p| p > x)
    }

    pub fn count_ones(&self) -> usize {
        count_ones(&self.parts)
    }

    /// Transpose of the Ferrers diagram.
    pub fn conjugate(&self) -> Partition {
        Partition::from_sorted_unchecked(conjugate_parts(&self.parts))
    }

    pub fn crank(&self) -> Result<i64> {
        crank_of_parts(&self.parts)
    }

    pub fn rank(&self) -> Result<i64> {
        rank_of_parts(&self.parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

fn count_ones(parts: &[u32]) -> usize {
    parts.len() - parts.partition_point(|&p| p > 1)
}

pub(crate) fn conjugate_parts(parts: &[u32]) -> Vec<u32> {
    let Some(&largest) = parts.first() else {
        return Vec::new();
    };
    (1..=largest)
        .map(|j| parts.partition_point(|&p| p >= j) as u32)
        .collect()
}

/// Crank of a weakly decreasing slice of parts.
pub fn crank_of_parts(parts: &[u32]) -> Result<i64> {
    let Some(&largest) = parts.first() else {
        return Err(Error::EmptyPartition);
    };
    let ones = count_ones(parts);
    if ones == 0 {
        return Ok(i64::from(largest));
    }
    let above = parts.partition_point(|&p| p as usize > ones);
    Ok(above as i64 - ones as i64)
}

/// Rank (largest part minus number of parts) of a weakly decreasing slice.
pub fn rank_of_parts(parts: &[u32]) -> Result<i64> {
    let Some(&largest) = parts.first() else {
        return Err(Error::EmptyPartition);
    };
    Ok(i64::from(largest) - parts.len() as i64)
}

/// Streams partitions in lexicographically decreasing order without
/// materializing them. Each call to [`PartitionStream::next_parts`] exposes
/// the current partition as a borrowed slice.
#[derive(Clone, Debug)]
pub struct PartitionStream {
    parts: Vec<u32>,
    /// Lowest index whose value may be changed; fixes a leading prefix.
    floor: usize,
    started: bool,
    done: bool,
}

impl PartitionStream {
    /// All partitions of `n`.
    pub fn new(n: u32) -> Self {
        let parts = if n == 0 { Vec::new() } else { vec![n] };
        PartitionStream {
            parts,
            floor: 0,
            started: false,
            done: false,
        }
    }

    /// Partitions of `n` whose largest part is exactly `largest`.
    pub fn with_largest_part(n: u32, largest: u32) -> Self {
        if largest == 0 || largest > n {
            let done = !(n == 0 && largest == 0);
            return PartitionStream {
                parts: Vec::new(),
                floor: 0,
                started: false,
                done,
            };
        }
        let mut parts = vec![largest];
        fill_greedy(&mut parts, n - largest, largest);
        PartitionStream {
            parts,
            floor: 1,
            started: false,
            done: false,
        }
    }

    pub fn next_parts(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.parts);
        }
        let ones = count_ones(&self.parts);
        let pivot_len = self.parts.len() - ones;
        if pivot_len <= self.floor {
            self.done = true;
            return None;
        }
        let idx = pivot_len - 1;
        let x = self.parts[idx] - 1;
        self.parts.truncate(idx);
        self.parts.push(x);
        fill_greedy(&mut self.parts, ones as u32 + 1, x);
        Some(&self.parts)
    }
}

fn fill_greedy(parts: &mut Vec<u32>, mut rest: u32, cap: u32) {
    while rest > 0 {
        let take = rest.min(cap);
        parts.push(take);
        rest -= take;
    }
}

impl Iterator for PartitionStream {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        self.next_parts()
            .map(|p| Partition::from_sorted_unchecked(p.to_vec()))
    }
}

/// Every partition of `n`, lexicographically decreasing; `[()]` for `n = 0`.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    enumerate_partitions_with(n, Exec::default())
}

pub fn enumerate_partitions_with(n: u32, exec: Exec) -> Vec<Partition> {
    if n == 0 {
        return vec![Partition::empty()];
    }
    let firsts: Vec<u32> = (1..=n).rev().collect();
    exec.flat_map(firsts, |f| {
        PartitionStream::with_largest_part(n, f).collect()
    })
}

/// Folds `visit` over every partition of `n`, split by largest part so the
/// work can fan out; partial results are merged with `merge` in order.
pub fn fold_partitions<A, V, M>(
    n: u32,
    exec: Exec,
    init: impl Fn() -> A + Sync + Send,
    visit: V,
    merge: M,
) -> A
where
    A: Send,
    V: Fn(&mut A, &[u32]) + Sync + Send,
    M: Fn(A, A) -> A,
{
    if n == 0 {
        let mut acc = init();
        visit(&mut acc, &[]);
        return acc;
    }
    let firsts: Vec<u32> = (1..=n).rev().collect();
    let partials = exec.map(firsts, |f| {
        let mut acc = init();
        let mut stream = PartitionStream::with_largest_part(n, f);
        while let Some(parts) = stream.next_parts() {
            visit(&mut acc, parts);
        }
        acc
    });
    partials.into_iter().reduce(merge).unwrap_or_else(init)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumerates_in_decreasing_lex_order() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let four: Vec<Vec<u32>> = enumerate_partitions(4).into_iter().map(Vec::from).collect();
        assert_eq!(
            four,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }

    fn brute_count(n: u32, cap: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=cap.min(n)).map(|f| brute_count(n - f, f)).sum()
    }

    #[test]
    fn counts_match_recursive_oracle() {
        assert_eq!(brute_count(10, 10), 42);
        for n in 0..=22 {
            let all = enumerate_partitions(n);
            assert_eq!(all.len() as u64, brute_count(n, n), "n = {n}");
            assert!(all.windows(2).all(|w| w[0] > w[1]));
            assert!(all.iter().all(|q| q.weight() == n));
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        assert_eq!(
            enumerate_partitions_with(15, Exec::Sequential),
            enumerate_partitions_with(15, Exec::Parallel)
        );
    }

    #[test]
    fn conjugates() {
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[2, 2]).conjugate(), p(&[2, 2]));
        assert_eq!(p(&[4, 1]).conjugate(), p(&[2, 1, 1, 1]));
    }

    #[test]
    fn crank_and_rank_values() {
        assert_eq!(p(&[5]).crank().unwrap(), 5);
        assert_eq!(p(&[2, 1, 1]).crank().unwrap(), -2);
        assert_eq!(p(&[3, 1, 1]).crank().unwrap(), -1);
        assert_eq!(p(&[1]).crank().unwrap(), -1);
        assert_eq!(p(&[5]).rank().unwrap(), 4);
        assert_eq!(p(&[2, 2]).rank().unwrap(), 0);
        assert_eq!(p(&[1, 1, 1]).rank().unwrap(), -2);
        assert!(matches!(
            Partition::empty().crank(),
            Err(Error::EmptyPartition)
        ));
        assert!(matches!(
            Partition::empty().rank(),
            Err(Error::EmptyPartition)
        ));
    }

    #[test]
    fn rejects_malformed() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(
            Partition::from_unsorted(vec![1, 3, 2]).unwrap(),
            p(&[3, 2, 1])
        );
    }

    #[test]
    fn serializes_as_array() {
        let json = serde_json::to_string(&p(&[3, 1])).unwrap();
        assert_eq!(json, "[3,1]");
        let back: Partition = serde_json::from_str(&json).unwrap();
        assert_eq!(back.weight(), 4);
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn largest_part_streams_partition_the_whole() {
        for n in 1..=12 {
            let total: usize = (1..=n)
                .map(|f| PartitionStream::with_largest_part(n, f).count())
                .sum();
            assert_eq!(total, enumerate_partitions(n).len());
        }
        assert_eq!(PartitionStream::with_largest_part(3, 4).count(), 0);
    }
}
