use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::family::PartitionFamily;
use crate::partition::SetPartition;

/// Largest `n` accepted by [`canonicalize_family_iso`].
pub const ISO_LIMIT: usize = 8;

/// Least image of `family` over relabelings of `[n]`, ordered by sorted
/// member ranks, together with a permutation attaining it (`perm[x - 1]` is
/// the image of `x`).
///
/// Each element gets a label-independent invariant, the sorted sizes of the
/// blocks containing it across members. Elements are sent to consecutive
/// slots in invariant order, so only permutations inside each invariant
/// class are tried.
pub fn canonicalize_family_iso(family: &PartitionFamily) -> Result<(PartitionFamily, Vec<usize>)> {
    let n = family.n();
    if n > ISO_LIMIT {
        return Err(Error::Limit {
            what: "family canonicalization",
            n,
            max: ISO_LIMIT,
        });
    }
    let members = family.partitions();
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for x in 1..=n {
        let mut inv: Vec<usize> = members
            .iter()
            .map(|p| p.rgs().iter().filter(|&&b| b == p.rgs()[x - 1]).count())
            .collect();
        inv.sort_unstable();
        classes.entry(inv).or_default().push(x);
    }
    let cells: Vec<Vec<usize>> = classes.into_values().collect();

    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    let mut perm = vec![0usize; n];
    let mut used = vec![false; n + 1];
    assign(&cells, 0, 0, 0, &mut perm, &mut used, &members, &mut best);
    let (ranks, perm) = best.expect("at least one permutation");
    Ok((PartitionFamily::from_ranks_unchecked(n, ranks), perm))
}

#[allow(clippy::too_many_arguments)]
fn assign(
    cells: &[Vec<usize>],
    cell: usize,
    idx: usize,
    base: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    members: &[SetPartition],
    best: &mut Option<(Vec<u64>, Vec<usize>)>,
) {
    if cell == cells.len() {
        let mut ranks: Vec<u64> = members
            .iter()
            .map(|p| p.relabel(perm).rank().expect("n within rank limit"))
            .collect();
        ranks.sort_unstable();
        if best.as_ref().is_none_or(|(b, _)| ranks < *b) {
            *best = Some((ranks, perm.clone()));
        }
        return;
    }
    let c = &cells[cell];
    if idx == c.len() {
        assign(
            cells,
            cell + 1,
            0,
            base + c.len(),
            perm,
            used,
            members,
            best,
        );
        return;
    }
    for slot in base + 1..=base + c.len() {
        if !used[slot] {
            used[slot] = true;
            perm[c[idx] - 1] = slot;
            assign(cells, cell, idx + 1, base, perm, used, members, best);
            used[slot] = false;
        }
    }
}

/// Canonical representatives of the distinct isomorphism classes, in order
/// of first appearance.
pub fn iso_classes(families: &[PartitionFamily]) -> Result<Vec<PartitionFamily>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for f in families {
        let (canon, _) = canonicalize_family_iso(f)?;
        if seen.insert(canon.ranks().to_vec()) {
            out.push(canon);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{construct_hm, construct_trivial, HmWitness};

    #[test]
    fn hm_families_are_equivalent() {
        let a = construct_hm(5, &HmWitness::new(vec![1], 5).unwrap()).unwrap();
        let b = construct_hm(5, &HmWitness::new(vec![2], 3).unwrap()).unwrap();
        let (ca, pa) = canonicalize_family_iso(&a).unwrap();
        let (cb, _) = canonicalize_family_iso(&b).unwrap();
        assert_eq!(ca, cb);
        assert_eq!(a.relabel(&pa), ca);
    }

    #[test]
    fn hm_differs_from_truncated_trivial() {
        let h = construct_hm(5, &HmWitness::new(vec![1], 5).unwrap()).unwrap();
        let triv = construct_trivial(5, &[1]).unwrap();
        let cut = PartitionFamily::from_ranks(5, triv.ranks()[..h.len()].to_vec()).unwrap();
        assert_eq!(cut.len(), 11);
        assert_ne!(
            canonicalize_family_iso(&h).unwrap().0,
            canonicalize_family_iso(&cut).unwrap().0
        );
    }

    #[test]
    fn limit() {
        let f = PartitionFamily::empty(9).unwrap();
        assert!(matches!(
            canonicalize_family_iso(&f),
            Err(Error::Limit { .. })
        ));
    }
}
