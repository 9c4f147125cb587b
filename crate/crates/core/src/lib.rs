//! Exact engine for t-intersecting families of set partitions.
//!
//! - [`partition`]: canonical partitions, enumeration, ranking, the
//!   `(i, j)`-split and the singleton projection `σ`.
//! - [`counting`]: exact Bell and singleton-free Bell numbers, the
//!   Hilton–Milner size formula and the supporting inequalities.
//! - [`family`]: families of partitions, splitting, compression,
//!   trivial and Hilton–Milner constructions and recognition.
//! - [`search`]: exact maximum (non-trivial) t-intersecting families by
//!   branch-and-bound clique search.
//! - [`io`] and [`verify`]: family files and the claim checker driven by
//!   the command-line tool.

pub mod counting;
pub mod error;
pub mod family;
pub mod io;
pub mod partition;
pub mod search;
pub mod verify;

pub use counting::{build_table, BellTable, BigCount, Lemma};
pub use error::{Error, Result};
pub use family::{HmWitness, PartitionFamily};
pub use partition::{enumerate_partitions, Block, SetPartition, SingletonSet};
pub use search::{build_graph, max_family, CompatibilityGraph, Mode, SearchOptions, SearchReport};
