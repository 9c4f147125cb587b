//! Checking that a Hilton–Milner family cannot be the splitting image of a
//! different t-intersecting family.

use serde::Serialize;

use super::{construct_hm, family_split, first_violation, HmWitness, PartitionFamily};
use crate::error::{Error, Result};
use crate::partition::{check_pair, SetPartition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndoVerdict {
    /// `A = H(a_1..a_t, b)`.
    pub holds: bool,
    /// A member of exactly one of `A`, `H` when `holds` is false.
    pub counterexample: Option<SetPartition>,
    /// Elements `e ∉ {a_1..a_t, b}` whose `P_e` is absent from `A`.
    pub missing_p_e: Vec<usize>,
    /// Anchors `a_l` whose `Q(a_l, b)` is absent from `A`.
    pub missing_q: Vec<usize>,
}

/// `P_e = {{a_1},…,{a_t},{e}, [n] ∖ {a_1,…,a_t,e}}`.
pub fn p_e(n: usize, anchors: &[usize], e: usize) -> Result<SetPartition> {
    let mut singles: Vec<usize> = anchors.to_vec();
    singles.push(e);
    let rest: Vec<usize> = (1..=n).filter(|x| !singles.contains(x)).collect();
    let mut blocks: Vec<Vec<usize>> = singles.into_iter().map(|x| vec![x]).collect();
    if !rest.is_empty() {
        blocks.push(rest);
    }
    SetPartition::from_block_lists(n, &blocks)
}

/// Given `A` with `S_ij(A) = H(witness)`, checks `A = H(witness)`.
///
/// Fails with `PremiseNotMet` when `A` is not t-intersecting or its
/// splitting image is not the Hilton–Milner family; that outcome is kept
/// apart from a failed conclusion.
pub fn verify_undo(
    family: &PartitionFamily,
    t: usize,
    i: usize,
    j: usize,
    witness: &HmWitness,
) -> Result<UndoVerdict> {
    let n = family.n();
    if witness.t() != t {
        return Err(Error::Range(format!(
            "witness has {} anchors but t = {}",
            witness.t(),
            t
        )));
    }
    if n < t + 3 {
        return Err(Error::Range(format!(
            "needs n >= t + 3 (n = {}, t = {})",
            n, t
        )));
    }
    check_pair(n, i, j)?;
    let h = construct_hm(n, witness)?;
    if let Some((p, q, s)) = first_violation(family, t) {
        return Err(Error::PremiseNotMet(format!(
            "family is not {}-intersecting ({} and {} share {} blocks)",
            t, p, q, s
        )));
    }
    let (_, image) = family_split(family, i, j)?;
    if image != h {
        return Err(Error::PremiseNotMet(format!(
            "S_{},{}(A) differs from H({:?}; {})",
            i, j, witness.anchors, witness.pivot
        )));
    }
    let lemma_checks = sub_checks(family, witness)?;
    let counterexample = family
        .partitions()
        .into_iter()
        .find(|p| !h.contains(p))
        .or_else(|| h.partitions().into_iter().find(|p| !family.contains(p)));
    Ok(UndoVerdict {
        holds: counterexample.is_none(),
        counterexample,
        missing_p_e: lemma_checks.0,
        missing_q: lemma_checks.1,
    })
}

/// Which of the partitions `P_e` and `Q(a_l, b)` are missing from `A`.
pub fn sub_checks(
    family: &PartitionFamily,
    witness: &HmWitness,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = family.n();
    let mut missing_p_e = Vec::new();
    for e in 1..=n {
        if witness.anchors.contains(&e) || e == witness.pivot {
            continue;
        }
        if !family.contains(&p_e(n, &witness.anchors, e)?) {
            missing_p_e.push(e);
        }
    }
    let mut missing_q = Vec::new();
    for &a in &witness.anchors {
        if !family.contains(&SetPartition::q(n, a, witness.pivot)?) {
            missing_q.push(a);
        }
    }
    Ok((missing_p_e, missing_q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnsplitFinding {
    pub i: usize,
    pub j: usize,
    /// Member of `H` that was replaced.
    pub replaced: String,
    /// The un-split partition put in its place.
    pub inserted: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnsplitReport {
    pub n: usize,
    pub t: usize,
    pub witness: HmWitness,
    /// Perturbed families examined.
    pub candidates: usize,
    /// Of those, how many satisfied the premise (t-intersecting with
    /// splitting image `H`).
    pub premise_met: usize,
    pub counterexamples: Vec<UnsplitFinding>,
}

/// Replaces one member `P` of `H` by a partition `T ∉ H` with
/// `s_ij(T) = P` (merge the singleton `{i}` into `j`'s block), for every
/// member and every ordered pair, and records each perturbed family that is
/// t-intersecting and splits back onto `H`.
pub fn unsplit_search(n: usize, witness: &HmWitness) -> Result<UnsplitReport> {
    let t = witness.t();
    let h = construct_hm(n, witness)?;
    let members = h.partitions();
    let decoded = super::Decoded::new(&h);
    let mut candidates = 0;
    let mut premise_met = 0;
    let mut counterexamples = Vec::new();
    for (idx, p) in members.iter().enumerate() {
        let sigma = p.sigma();
        for i in 1..=n {
            if !sigma.contains(i) {
                continue;
            }
            for j in 1..=n {
                if j == i {
                    continue;
                }
                let mut labels = p.rgs().to_vec();
                labels[i - 1] = labels[j - 1];
                let unsplit = SetPartition::canonicalize(&labels);
                if h.contains(&unsplit) {
                    continue;
                }
                debug_assert_eq!(&unsplit.split(i, j)?, p);
                candidates += 1;
                let mut masks = unsplit.block_masks();
                masks.sort_unstable();
                let intersecting = decoded
                    .masks
                    .iter()
                    .enumerate()
                    .all(|(k, m)| k == idx || super::shared_blocks(&masks, m) >= t);
                if !intersecting {
                    continue;
                }
                let mut perturbed = h.clone();
                perturbed.remove(p);
                perturbed.insert(&unsplit)?;
                let (_, image) = family_split(&perturbed, i, j)?;
                if image == h {
                    premise_met += 1;
                    counterexamples.push(UnsplitFinding {
                        i,
                        j,
                        replaced: p.to_string(),
                        inserted: unsplit.to_string(),
                    });
                }
            }
        }
    }
    Ok(UnsplitReport {
        n,
        t,
        witness: witness.clone(),
        candidates,
        premise_met,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hm_itself_passes() {
        let w = HmWitness::new(vec![1], 5).unwrap();
        let h = construct_hm(5, &w).unwrap();
        let mut checked = 0;
        for i in 1..=5 {
            for j in 1..=5 {
                if i == j {
                    continue;
                }
                match verify_undo(&h, 1, i, j, &w) {
                    Ok(v) => {
                        assert!(v.holds);
                        assert!(v.missing_p_e.is_empty());
                        assert!(v.missing_q.is_empty());
                        checked += 1;
                    }
                    Err(Error::PremiseNotMet(_)) => {}
                    Err(e) => panic!("{}", e),
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn premise_failure_is_distinct() {
        let w = HmWitness::new(vec![1], 5).unwrap();
        let triv = crate::family::construct_trivial(5, &[1]).unwrap();
        assert!(matches!(
            verify_undo(&triv, 1, 2, 3, &w),
            Err(Error::PremiseNotMet(_))
        ));
        let w3 = HmWitness::new(vec![1], 3).unwrap();
        let h = construct_hm(3, &w3).unwrap();
        assert!(matches!(
            verify_undo(&h, 1, 1, 2, &w3),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn p_e_shape() {
        assert_eq!(p_e(5, &[1], 3).unwrap().to_string(), "1|2,4,5|3");
    }

    #[test]
    fn no_unsplit_counterexample_small() {
        let rep = unsplit_search(5, &HmWitness::new(vec![1], 5).unwrap()).unwrap();
        assert!(rep.candidates > 0);
        assert!(rep.counterexamples.is_empty());
    }
}
