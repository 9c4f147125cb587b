use serde::Serialize;

use super::{is_t_intersecting, require_intersecting, triviality_witness, PartitionFamily};
use crate::error::Result;
use crate::partition::check_pair;

/// `A = (A ∖ A_ij) ∪ A_ij` with `A_ij = {P ∈ A : s_ij(P) ∉ A}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDecomposition {
    pub stay: PartitionFamily,
    pub moved: PartitionFamily,
    pub image_of_moved: PartitionFamily,
}

/// `S_ij(A)`: members whose split leaves the family are replaced by the
/// split image; everything else stays.
pub fn family_split(
    family: &PartitionFamily,
    i: usize,
    j: usize,
) -> Result<(SplitDecomposition, PartitionFamily)> {
    let n = family.n();
    check_pair(n, i, j)?;
    let mut stay = Vec::with_capacity(family.len());
    let mut moved = Vec::new();
    let mut image = Vec::new();
    for (p, &r) in family.partitions().iter().zip(family.ranks()) {
        let s = p.split(i, j)?;
        let sr = s.rank()?;
        if sr != r && !family.contains_rank(sr) {
            moved.push(r);
            image.push(sr);
        } else {
            stay.push(r);
        }
    }
    let moved_len = moved.len();
    let image_of_moved = PartitionFamily::from_ranks_unchecked(n, image);
    // split is injective on A_ij: two preimages of one image would both be
    // the image with i merged back into j's block
    assert_eq!(
        image_of_moved.len(),
        moved_len,
        "split not injective on A_ij"
    );
    let mut result: Vec<u64> = stay.clone();
    result.extend_from_slice(image_of_moved.ranks());
    let result = PartitionFamily::from_ranks_unchecked(n, result);
    assert_eq!(result.len(), family.len(), "S_ij changed the family size");
    Ok((
        SplitDecomposition {
            stay: PartitionFamily::from_ranks_unchecked(n, stay),
            moved: PartitionFamily::from_ranks_unchecked(n, moved),
            image_of_moved,
        },
        result,
    ))
}

/// Order in which `compress` tries the splitting pairs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairOrder {
    /// All ordered pairs `(i, j)` lexicographically, in passes until a pass
    /// changes nothing.
    #[default]
    Lexicographic,
    /// As `Lexicographic`, but skip any pair whose application would turn a
    /// non-trivial family into a trivial one.
    NontrivialPreserving,
}

impl std::str::FromStr for PairOrder {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lex" | "lexicographic" => Ok(PairOrder::Lexicographic),
            "nontrivial-preserving" => Ok(PairOrder::NontrivialPreserving),
            other => Err(format!("unknown pair order `{}`", other)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SplitStep {
    pub i: usize,
    pub j: usize,
    pub moved: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressionReport {
    pub initial: PartitionFamily,
    pub final_family: PartitionFamily,
    /// Effective (changing) applications only.
    pub steps: Vec<SplitStep>,
    pub passes: usize,
    /// Set when `NontrivialPreserving` ends with pairs it refused to apply;
    /// `final_family` is then not compressed.
    pub stuck: bool,
}

impl CompressionReport {
    pub fn effective_steps(&self) -> usize {
        self.steps.len()
    }
}

/// Applies splittings until no pair changes the family.
///
/// Each effective application raises the total singleton count, which is
/// at most `n·|A|`, so the loop ends after at most that many steps.
pub fn compress(family: &PartitionFamily, t: usize, order: PairOrder) -> Result<CompressionReport> {
    require_intersecting(family, t)?;
    let n = family.n();
    let start_trivial = family.is_empty() || triviality_witness(family, t)?.is_some();
    let mut current = family.clone();
    let mut steps = Vec::new();
    let mut passes = 0;
    let stuck;
    loop {
        passes += 1;
        let mut changed = false;
        let mut skipped = false;
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let (dec, next) = family_split(&current, i, j)?;
                if dec.moved.is_empty() {
                    continue;
                }
                if order == PairOrder::NontrivialPreserving
                    && !start_trivial
                    && triviality_witness(&next, t)?.is_some()
                {
                    skipped = true;
                    continue;
                }
                debug_assert!(is_t_intersecting(&next, t));
                steps.push(SplitStep {
                    i,
                    j,
                    moved: dec.moved.len(),
                });
                current = next;
                changed = true;
            }
        }
        if !changed {
            stuck = skipped;
            break;
        }
    }
    Ok(CompressionReport {
        initial: family.clone(),
        final_family: current,
        steps,
        passes,
        stuck,
    })
}

/// True iff `S_ij(A) = A` for every ordered pair.
pub fn is_compressed(family: &PartitionFamily) -> Result<bool> {
    let n = family.n();
    for i in 1..=n {
        for j in 1..=n {
            if i != j && !family_split(family, i, j)?.0.moved.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::partition::SetPartition;

    fn fam(n: usize, parts: &[&str]) -> PartitionFamily {
        let ps: Vec<SetPartition> = parts
            .iter()
            .map(|s| SetPartition::parse(s, Some(n)).unwrap())
            .collect();
        PartitionFamily::from_partitions(n, &ps).unwrap()
    }

    #[test]
    fn split_single_member() {
        let (dec, out) = family_split(&fam(3, &["1,2|3"]), 1, 2).unwrap();
        assert_eq!(out, fam(3, &["1|2|3"]));
        assert_eq!(dec.moved.len(), 1);
        assert!(dec.stay.is_empty());
    }

    #[test]
    fn split_blocked_by_existing_image() {
        let a = fam(3, &["1,2|3", "1|2|3"]);
        let (dec, out) = family_split(&a, 1, 2).unwrap();
        assert!(dec.moved.is_empty());
        assert_eq!(out, a);
        assert_eq!(dec.stay, a);
    }

    #[test]
    fn split_rejects_bad_pairs() {
        let a = fam(3, &["1,2|3"]);
        assert!(matches!(family_split(&a, 2, 2), Err(Error::Element { .. })));
        assert!(matches!(family_split(&a, 1, 4), Err(Error::Element { .. })));
    }

    #[test]
    fn compress_fixpoint_and_single_member() {
        let done = fam(3, &["1|2|3"]);
        let rep = compress(&done, 1, PairOrder::Lexicographic).unwrap();
        assert!(rep.steps.is_empty());
        assert_eq!(rep.final_family, done);

        for order in [PairOrder::Lexicographic, PairOrder::NontrivialPreserving] {
            let rep = compress(&fam(3, &["1,2|3"]), 1, order).unwrap();
            assert_eq!(rep.final_family, done);
            assert!(is_compressed(&rep.final_family).unwrap());
        }
    }

    #[test]
    fn compress_requires_intersecting() {
        let a = fam(2, &["1,2", "1|2"]);
        assert!(matches!(
            compress(&a, 1, PairOrder::Lexicographic),
            Err(Error::NotIntersecting { .. })
        ));
    }

    #[test]
    fn compress_is_idempotent() {
        let a = fam(5, &["1,2|3|4,5", "1,2|3,4|5", "1,2|3,5|4"]);
        let rep = compress(&a, 1, PairOrder::Lexicographic).unwrap();
        assert_eq!(rep.final_family.len(), 3);
        assert!(is_compressed(&rep.final_family).unwrap());
        let again = compress(&rep.final_family, 1, PairOrder::Lexicographic).unwrap();
        assert!(again.steps.is_empty());
    }
}
