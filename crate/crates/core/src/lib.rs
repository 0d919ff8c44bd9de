//! Exact combinatorics of partition cranks: Dyson symbols, k-marked Dyson
//! symbols and their full crank, symmetrized crank and rank moments, and
//! the congruences that connect them.
//!
//! Counts are exact ([`num_bigint::BigInt`]). Enumerations and table
//! builds take an [`Exec`] to choose between the rayon-backed parallel path
//! (feature `parallel`, on by default) and a plain sequential loop.

pub mod binomial;
pub mod congruence;
pub mod dyson;
pub mod error;
pub mod exec;
pub mod fullcrank;
pub mod json;
pub mod marked;
pub mod partition;
pub mod table;
pub mod verify;

pub use binomial::gen_binomial;
pub use dyson::{enumerate_dyson_symbols, from_dyson_symbol, to_dyson_symbol, DysonSymbol};
pub use error::{Error, Result};
pub use exec::Exec;
pub use fullcrank::full_crank;
pub use marked::{enumerate_marked, MarkedDysonSymbol};
pub use partition::{enumerate_partitions, Partition, PartitionStream};
pub use table::{
    crank_counts, crank_moment, partition_count, rank_counts, rank_moment, CountTable,
};
pub use verify::{Identity, Verdict};
