//! Canonical set partitions of `[n] = {1, ..., n}`.
//!
//! A partition is stored as its restricted-growth sequence (rgs): entry `k`
//! is the block index of element `k + 1`, blocks being numbered in order of
//! their minimum element. Two partitions are equal iff their sequences are.
//! Elements are 1-based at every public boundary.

mod enumerate;
mod rank;
mod text;

pub use enumerate::{enumerate_partitions, PartitionIter};
pub use rank::{bell_u64, rank, unrank, RANK_LIMIT};

use std::fmt;

use crate::error::{Error, Result};

/// Largest ground set a [`SetPartition`] can live on (singleton sets are
/// packed into a `u64`).
pub const MAX_N: usize = 64;

/// Largest `n` for which [`enumerate_partitions`] materializes partitions.
/// `B_14` is about 1.9e8; counting beyond this goes through `counting`.
pub const ENUM_LIMIT: usize = 14;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    rgs: Vec<u8>,
}

/// One block: a nonempty, strictly increasing list of 1-based elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block(Vec<usize>);

impl Block {
    pub fn new(mut elements: Vec<usize>) -> Result<Block> {
        if elements.is_empty() {
            return Err(Error::EmptyBlock);
        }
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Overlap { element: w[0] });
        }
        Ok(Block(elements))
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> usize {
        self.0[0]
    }
}

/// `σ(P)`: the elements that form singleton blocks, as a bitmask
/// (bit `x - 1` set iff `{x}` is a block).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingletonSet(u64);

impl SingletonSet {
    pub fn from_mask(mask: u64) -> SingletonSet {
        SingletonSet(mask)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> SingletonSet {
        SingletonSet(elements.into_iter().fold(0, |m, x| m | (1u64 << (x - 1))))
    }

    /// All of `[n]`.
    pub fn full(n: usize) -> SingletonSet {
        SingletonSet(full_mask(n))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, x: usize) -> bool {
        (1..=MAX_N).contains(&x) && self.0 >> (x - 1) & 1 == 1
    }

    pub fn intersection(self, other: SingletonSet) -> SingletonSet {
        SingletonSet(self.0 & other.0)
    }

    pub fn union(self, other: SingletonSet) -> SingletonSet {
        SingletonSet(self.0 | other.0)
    }

    pub fn is_superset(self, other: SingletonSet) -> bool {
        self.0 & other.0 == other.0
    }

    /// Elements in increasing order.
    pub fn elements(self) -> Vec<usize> {
        mask_elements(self.0)
    }
}

impl fmt::Debug for SingletonSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for SingletonSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn mask_elements(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize + 1);
        mask &= mask - 1;
    }
    out
}

impl SetPartition {
    /// Validates and wraps a restricted-growth sequence.
    pub fn from_rgs(rgs: Vec<u8>) -> Result<SetPartition> {
        if rgs.is_empty() {
            return Err(Error::InvalidRgs("empty sequence".into()));
        }
        if rgs.len() > MAX_N {
            return Err(Error::Limit {
                what: "set partition",
                n: rgs.len(),
                max: MAX_N,
            });
        }
        if rgs[0] != 0 {
            return Err(Error::InvalidRgs("first entry must be 0".into()));
        }
        let mut max = 0u8;
        for (k, &v) in rgs.iter().enumerate().skip(1) {
            if v > max + 1 {
                return Err(Error::InvalidRgs(format!(
                    "entry {} at position {} exceeds running maximum {} by more than one",
                    v,
                    k + 1,
                    max
                )));
            }
            max = max.max(v);
        }
        Ok(SetPartition { rgs })
    }

    pub(crate) fn from_rgs_unchecked(rgs: Vec<u8>) -> SetPartition {
        debug_assert!(SetPartition::from_rgs(rgs.clone()).is_ok());
        SetPartition { rgs }
    }

    /// Relabels arbitrary block labels into canonical form (labels renumbered
    /// by first appearance).
    pub(crate) fn canonicalize(labels: &[u8]) -> SetPartition {
        let mut map = [u8::MAX; 256];
        let mut next = 0u8;
        let rgs = labels
            .iter()
            .map(|&l| {
                if map[l as usize] == u8::MAX {
                    map[l as usize] = next;
                    next += 1;
                }
                map[l as usize]
            })
            .collect();
        SetPartition { rgs }
    }

    /// Builds the canonical partition with the given blocks.
    pub fn from_blocks(n: usize, blocks: &[Block]) -> Result<SetPartition> {
        if n == 0 || n > MAX_N {
            return Err(Error::Limit {
                what: "set partition",
                n,
                max: MAX_N,
            });
        }
        let mut labels = vec![u8::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            for &x in block.elements() {
                if x == 0 || x > n {
                    return Err(Error::Cover {
                        n,
                        detail: format!("element {} lies outside [1..{}]", x, n),
                    });
                }
                if labels[x - 1] != u8::MAX {
                    return Err(Error::Overlap { element: x });
                }
                labels[x - 1] = b as u8;
            }
        }
        let missing: Vec<String> = labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == u8::MAX)
            .map(|(k, _)| (k + 1).to_string())
            .collect();
        if !missing.is_empty() {
            return Err(Error::Cover {
                n,
                detail: format!("missing element(s) {}", missing.join(",")),
            });
        }
        Ok(SetPartition::canonicalize(&labels))
    }

    /// Builds a partition from plain element lists.
    pub fn from_block_lists(n: usize, blocks: &[Vec<usize>]) -> Result<SetPartition> {
        let blocks = blocks
            .iter()
            .map(|b| Block::new(b.clone()))
            .collect::<Result<Vec<_>>>()?;
        SetPartition::from_blocks(n, &blocks)
    }

    /// The partition of `[n]` into singletons.
    pub fn discrete(n: usize) -> SetPartition {
        SetPartition {
            rgs: (0..n).map(|k| k as u8).collect(),
        }
    }

    /// `Q(a, b)`: `{a, b}` as one block, every other element a singleton.
    pub fn q(n: usize, a: usize, b: usize) -> Result<SetPartition> {
        check_pair(n, a, b)?;
        let mut labels: Vec<u8> = (0..n).map(|k| k as u8).collect();
        labels[b - 1] = labels[a - 1];
        Ok(SetPartition::canonicalize(&labels))
    }

    pub fn n(&self) -> usize {
        self.rgs.len()
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().copied().max().map_or(0, |m| m as usize + 1)
    }

    /// Block bitmasks in canonical block order (bit `x - 1` for element `x`).
    pub fn block_masks(&self) -> Vec<u64> {
        let mut masks = vec![0u64; self.num_blocks()];
        for (k, &b) in self.rgs.iter().enumerate() {
            masks[b as usize] |= 1u64 << k;
        }
        masks
    }

    pub fn to_blocks(&self) -> Vec<Block> {
        let blocks: Vec<Block> = self
            .block_masks()
            .into_iter()
            .map(|m| Block(mask_elements(m)))
            .collect();
        debug_assert!({
            let mut seen = 0u64;
            blocks.iter().all(|b| {
                b.elements().iter().all(|&x| {
                    let bit = 1u64 << (x - 1);
                    let fresh = seen & bit == 0;
                    seen |= bit;
                    fresh
                })
            }) && seen == full_mask(self.n())
        });
        blocks
    }

    /// `P_[i]`, the block containing `i`.
    pub fn block_of(&self, i: usize) -> Result<Block> {
        if i == 0 || i > self.n() {
            return Err(Error::Element {
                i,
                j: i,
                n: self.n(),
            });
        }
        Ok(Block(mask_elements(self.block_mask_of(i))))
    }

    pub(crate) fn block_mask_of(&self, i: usize) -> u64 {
        let label = self.rgs[i - 1];
        self.rgs
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == label)
            .fold(0, |m, (k, _)| m | 1u64 << k)
    }

    pub fn sigma(&self) -> SingletonSet {
        let mut counts = [0u8; MAX_N];
        for &b in &self.rgs {
            counts[b as usize] = counts[b as usize].saturating_add(1);
        }
        SingletonSet(
            self.rgs
                .iter()
                .enumerate()
                .filter(|(_, &b)| counts[b as usize] == 1)
                .fold(0, |m, (k, _)| m | 1u64 << k),
        )
    }

    /// Number of blocks shared by `self` and `other`.
    pub fn common_blocks(&self, other: &SetPartition) -> Result<usize> {
        if self.n() != other.n() {
            return Err(Error::Dimension {
                left: self.n(),
                right: other.n(),
            });
        }
        let ours = self.block_masks();
        let theirs = other.block_masks();
        Ok(ours
            .iter()
            .filter(|&&m| {
                let first = m.trailing_zeros() as usize;
                theirs[other.rgs[first] as usize] == m
            })
            .count())
    }

    /// The `(i, j)`-split: if `j` shares a block with `i`, detach `i` into a
    /// singleton; otherwise return the partition unchanged.
    pub fn split(&self, i: usize, j: usize) -> Result<SetPartition> {
        check_pair(self.n(), i, j)?;
        if self.rgs[i - 1] != self.rgs[j - 1] {
            return Ok(self.clone());
        }
        let mut labels = self.rgs.clone();
        labels[i - 1] = self.num_blocks() as u8;
        Ok(SetPartition::canonicalize(&labels))
    }

    /// Image under a permutation of `[n]`; `perm[x - 1]` is the image of `x`.
    pub fn relabel(&self, perm: &[usize]) -> SetPartition {
        debug_assert_eq!(perm.len(), self.n());
        let mut labels = vec![0u8; self.n()];
        for (k, &b) in self.rgs.iter().enumerate() {
            labels[perm[k] - 1] = b;
        }
        SetPartition::canonicalize(&labels)
    }
}

pub(crate) fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::Element { i, j, n });
    }
    Ok(())
}

/// Free-function form of [`SetPartition::common_blocks`].
pub fn common_blocks(p: &SetPartition, q: &SetPartition) -> Result<usize> {
    p.common_blocks(q)
}

/// Free-function form of [`SetPartition::split`].
pub fn split(p: &SetPartition, i: usize, j: usize) -> Result<SetPartition> {
    p.split(i, j)
}

pub fn sigma(p: &SetPartition) -> SingletonSet {
    p.sigma()
}
