//! Families of set partitions over a common ground set.
//!
//! A family is a sorted, duplicate-free list of partition ranks, so
//! membership is a binary search.

mod construct;
pub mod sample;
mod split;
mod undo;

pub(crate) use construct::combinations;
pub use construct::{construct_hm, construct_trivial, recognize_hm};
pub use split::{
    compress, family_split, is_compressed, CompressionReport, PairOrder, SplitDecomposition,
    SplitStep,
};
pub use undo::{
    p_e, sub_checks, unsplit_search, verify_undo, UndoVerdict, UnsplitFinding, UnsplitReport,
};

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{full_mask, unrank, SetPartition, SingletonSet, RANK_LIMIT};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionFamily {
    n: usize,
    members: Vec<u64>,
}

impl std::fmt::Debug for PartitionFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.partitions().iter().map(|p| p.to_string()).collect();
        write!(f, "PartitionFamily(n={}, [{}])", self.n, parts.join(" ; "))
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > RANK_LIMIT {
        return Err(Error::Limit {
            what: "partition family",
            n,
            max: RANK_LIMIT,
        });
    }
    Ok(())
}

impl PartitionFamily {
    pub fn empty(n: usize) -> Result<PartitionFamily> {
        check_n(n)?;
        Ok(PartitionFamily {
            n,
            members: Vec::new(),
        })
    }

    /// Collects partitions into a family; repeated members collapse.
    pub fn from_partitions<'a, I>(n: usize, parts: I) -> Result<PartitionFamily>
    where
        I: IntoIterator<Item = &'a SetPartition>,
    {
        check_n(n)?;
        let mut members = Vec::new();
        for p in parts {
            if p.n() != n {
                return Err(Error::Dimension {
                    left: n,
                    right: p.n(),
                });
            }
            members.push(p.rank()?);
        }
        Ok(PartitionFamily::from_ranks_unchecked(n, members))
    }

    pub fn from_ranks(n: usize, ranks: Vec<u64>) -> Result<PartitionFamily> {
        check_n(n)?;
        let total = crate::partition::bell_u64(n)?;
        if let Some(r) = ranks.iter().find(|&&r| r >= total) {
            return Err(Error::Range(format!(
                "rank {} out of range for n = {}",
                r, n
            )));
        }
        Ok(PartitionFamily::from_ranks_unchecked(n, ranks))
    }

    pub(crate) fn from_ranks_unchecked(n: usize, mut members: Vec<u64>) -> PartitionFamily {
        members.sort_unstable();
        members.dedup();
        PartitionFamily { n, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Member ranks in ascending order.
    pub fn ranks(&self) -> &[u64] {
        &self.members
    }

    pub fn contains_rank(&self, r: u64) -> bool {
        self.members.binary_search(&r).is_ok()
    }

    pub fn contains(&self, p: &SetPartition) -> bool {
        p.n() == self.n && p.rank().is_ok_and(|r| self.contains_rank(r))
    }

    /// Members in ascending rank order.
    pub fn partitions(&self) -> Vec<SetPartition> {
        self.members
            .iter()
            .map(|&r| unrank(self.n, r).expect("member ranks are valid"))
            .collect()
    }

    pub fn insert(&mut self, p: &SetPartition) -> Result<bool> {
        if p.n() != self.n {
            return Err(Error::Dimension {
                left: self.n,
                right: p.n(),
            });
        }
        let r = p.rank()?;
        match self.members.binary_search(&r) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.members.insert(pos, r);
                Ok(true)
            }
        }
    }

    pub fn remove(&mut self, p: &SetPartition) -> bool {
        match p
            .rank()
            .ok()
            .and_then(|r| self.members.binary_search(&r).ok())
        {
            Some(pos) if p.n() == self.n => {
                self.members.remove(pos);
                true
            }
            _ => false,
        }
    }

    /// Image under a permutation of `[n]` (`perm[x - 1]` is the image of `x`).
    pub fn relabel(&self, perm: &[usize]) -> PartitionFamily {
        let ranks = self
            .partitions()
            .iter()
            .map(|p| p.relabel(perm).rank().expect("n within rank limit"))
            .collect();
        PartitionFamily::from_ranks_unchecked(self.n, ranks)
    }

    /// Sum of `|σ(P)|` over members.
    pub fn singleton_total(&self) -> usize {
        self.partitions().iter().map(|p| p.sigma().len()).sum()
    }
}

/// Block masks of each member, sorted, for fast pairwise intersection.
pub(crate) struct Decoded {
    pub parts: Vec<SetPartition>,
    pub masks: Vec<Vec<u64>>,
}

impl Decoded {
    pub fn new(family: &PartitionFamily) -> Decoded {
        let parts = family.partitions();
        let masks = parts
            .iter()
            .map(|p| {
                let mut m = p.block_masks();
                m.sort_unstable();
                m
            })
            .collect();
        Decoded { parts, masks }
    }
}

/// Number of equal entries in two sorted mask lists.
pub(crate) fn shared_blocks(a: &[u64], b: &[u64]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// First pair (in rank order) sharing fewer than `t` blocks.
pub fn first_violation(
    family: &PartitionFamily,
    t: usize,
) -> Option<(SetPartition, SetPartition, usize)> {
    let d = Decoded::new(family);
    let m = d.parts.len();
    let hit = (0..m).into_par_iter().find_map_first(|a| {
        (a + 1..m).find_map(|b| {
            let s = shared_blocks(&d.masks[a], &d.masks[b]);
            (s < t).then_some((a, b, s))
        })
    });
    hit.map(|(a, b, s)| (d.parts[a].clone(), d.parts[b].clone(), s))
}

/// True iff every two members share at least `t` blocks.
pub fn is_t_intersecting(family: &PartitionFamily, t: usize) -> bool {
    first_violation(family, t).is_none()
}

pub(crate) fn require_intersecting(family: &PartitionFamily, t: usize) -> Result<()> {
    match first_violation(family, t) {
        None => Ok(()),
        Some((p, q, shared)) => Err(Error::NotIntersecting {
            t,
            left: p.to_string(),
            right: q.to_string(),
            shared,
        }),
    }
}

/// `∩_{P ∈ A} σ(P)`; `[n]` for the empty family.
pub fn common_singletons(family: &PartitionFamily) -> SingletonSet {
    family
        .partitions()
        .iter()
        .fold(SingletonSet::from_mask(full_mask(family.n)), |acc, p| {
            acc.intersection(p.sigma())
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialityWitness {
    /// The first `t` common singletons.
    pub anchors: Vec<usize>,
    /// Every element that is a singleton in all members.
    pub common: Vec<usize>,
}

/// `Some` iff all members share at least `t` singleton blocks.
pub fn triviality_witness(family: &PartitionFamily, t: usize) -> Result<Option<TrivialityWitness>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let common = common_singletons(family).elements();
    if common.len() >= t {
        Ok(Some(TrivialityWitness {
            anchors: common[..t].to_vec(),
            common,
        }))
    } else {
        Ok(None)
    }
}

/// `σ(A)` with duplicates collapsed; `multiset_size` is `|A|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaFamily {
    pub sets: BTreeSet<SingletonSet>,
    pub multiset_size: usize,
}

impl SigmaFamily {
    /// Minimum intersection size over pairs of distinct sets; `None` for
    /// fewer than two sets.
    pub fn min_pairwise_intersection(&self) -> Option<usize> {
        let sets: Vec<_> = self.sets.iter().collect();
        let mut best: Option<usize> = None;
        for (a, x) in sets.iter().enumerate() {
            for y in &sets[a + 1..] {
                let s = x.intersection(**y).len();
                best = Some(best.map_or(s, |b| b.min(s)));
            }
        }
        best
    }

    pub fn is_t_intersecting(&self, t: usize) -> bool {
        self.min_pairwise_intersection().is_none_or(|m| m >= t)
    }
}

pub fn sigma_family(family: &PartitionFamily) -> SigmaFamily {
    SigmaFamily {
        sets: family.partitions().iter().map(|p| p.sigma()).collect(),
        multiset_size: family.len(),
    }
}

/// `(a_1, ..., a_t; b)` naming a Hilton–Milner type family. Anchors are kept
/// sorted since they form a set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HmWitness {
    pub anchors: Vec<usize>,
    pub pivot: usize,
}

impl HmWitness {
    pub fn new(mut anchors: Vec<usize>, pivot: usize) -> Result<HmWitness> {
        anchors.sort_unstable();
        if anchors.is_empty()
            || anchors.windows(2).any(|w| w[0] == w[1])
            || anchors.contains(&pivot)
        {
            return Err(Error::Range(format!(
                "witness needs t >= 1 distinct anchors and a different pivot (anchors {:?}, pivot {})",
                anchors, pivot
            )));
        }
        Ok(HmWitness { anchors, pivot })
    }

    pub fn t(&self) -> usize {
        self.anchors.len()
    }

    pub(crate) fn check(&self, n: usize) -> Result<()> {
        if self
            .anchors
            .iter()
            .chain(Some(&self.pivot))
            .any(|&x| x == 0 || x > n)
        {
            return Err(Error::Element {
                i: *self.anchors.iter().max().unwrap_or(&0),
                j: self.pivot,
                n,
            });
        }
        Ok(())
    }

    /// Image under a permutation of `[n]`.
    pub fn relabel(&self, perm: &[usize]) -> HmWitness {
        let mut anchors: Vec<usize> = self.anchors.iter().map(|&a| perm[a - 1]).collect();
        anchors.sort_unstable();
        HmWitness {
            anchors,
            pivot: perm[self.pivot - 1],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, parts: &[&str]) -> PartitionFamily {
        let ps: Vec<SetPartition> = parts
            .iter()
            .map(|s| SetPartition::parse(s, Some(n)).unwrap())
            .collect();
        PartitionFamily::from_partitions(n, &ps).unwrap()
    }

    #[test]
    fn intersecting_examples() {
        let empty = PartitionFamily::empty(4).unwrap();
        assert!(is_t_intersecting(&empty, 3));
        assert!(is_t_intersecting(&fam(4, &["1,2,3,4"]), 3));
        assert!(is_t_intersecting(&fam(3, &["1|2,3", "1|2|3"]), 1));
        let qq = fam(5, &["1,5|2|3|4", "2,5|1|3|4"]);
        assert!(is_t_intersecting(&qq, 2));
        assert!(!is_t_intersecting(&qq, 3));
        assert!(matches!(
            require_intersecting(&qq, 3),
            Err(Error::NotIntersecting { shared: 2, .. })
        ));
    }

    #[test]
    fn triviality_examples() {
        let w = triviality_witness(&fam(4, &["1|2|3,4"]), 2)
            .unwrap()
            .unwrap();
        assert_eq!(w.common, vec![1, 2]);
        assert_eq!(w.anchors, vec![1, 2]);
        assert_eq!(
            triviality_witness(&PartitionFamily::empty(3).unwrap(), 1),
            Err(Error::EmptyFamily)
        );
    }

    #[test]
    fn sigma_family_examples() {
        let s = sigma_family(&fam(3, &["1|2,3", "1|2|3"]));
        let got: Vec<Vec<usize>> = s.sets.iter().map(|x| x.elements()).collect();
        assert_eq!(got, vec![vec![1], vec![1, 2, 3]]);
        assert_eq!(s.multiset_size, 2);
        let single = sigma_family(&fam(3, &["1,2,3"]));
        assert_eq!(single.sets.len(), 1);
        assert!(single.sets.iter().next().unwrap().is_empty());
    }

    #[test]
    fn members_are_a_set() {
        let p = SetPartition::discrete(3);
        let f = PartitionFamily::from_partitions(3, [&p, &p]).unwrap();
        assert_eq!(f.len(), 1);
        let mut g = f.clone();
        assert!(!g.insert(&p).unwrap());
        assert!(g.remove(&p));
        assert!(g.is_empty());
        assert!(matches!(
            PartitionFamily::from_partitions(4, [&p]),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn witness_validation() {
        assert!(HmWitness::new(vec![1, 1], 3).is_err());
        assert!(HmWitness::new(vec![1], 1).is_err());
        assert_eq!(HmWitness::new(vec![3, 1], 5).unwrap().anchors, vec![1, 3]);
    }
}
