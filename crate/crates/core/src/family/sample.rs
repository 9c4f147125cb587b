//! Seeded random families for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{shared_blocks, PartitionFamily};
use crate::error::Result;
use crate::partition::{bell_u64, unrank};

/// Uniform random subset of `B(n)` with exactly `size` members
/// (capped at `B_n`).
pub fn random_family<R: Rng>(rng: &mut R, n: usize, size: usize) -> Result<PartitionFamily> {
    let total = bell_u64(n)?;
    let mut all: Vec<u64> = (0..total).collect();
    all.shuffle(rng);
    all.truncate(size.min(total as usize));
    PartitionFamily::from_ranks(n, all)
}

/// Random t-intersecting family: visit partitions in random order and keep
/// each one compatible with everything kept so far, stopping at
/// `max_size` members.
pub fn random_intersecting_family<R: Rng>(
    rng: &mut R,
    n: usize,
    t: usize,
    max_size: usize,
) -> Result<PartitionFamily> {
    let total = bell_u64(n)?;
    let mut order: Vec<u64> = (0..total).collect();
    order.shuffle(rng);
    let mut kept: Vec<u64> = Vec::new();
    let mut kept_masks: Vec<Vec<u64>> = Vec::new();
    for r in order {
        if kept.len() >= max_size {
            break;
        }
        let p = unrank(n, r)?;
        let mut masks = p.block_masks();
        masks.sort_unstable();
        if kept_masks.iter().all(|m| shared_blocks(m, &masks) >= t) {
            kept.push(r);
            kept_masks.push(masks);
        }
    }
    PartitionFamily::from_ranks(n, kept)
}
