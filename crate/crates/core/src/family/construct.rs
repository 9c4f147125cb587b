use rayon::prelude::*;

use super::{HmWitness, PartitionFamily};
use crate::counting::BellTable;
use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, SetPartition, ENUM_LIMIT};

/// Partitions of `[n]` with every element of `fixed` as a singleton block,
/// obtained by partitioning the remaining elements. `keep` sees each
/// partition of the remainder (in remainder coordinates, with the mapping
/// to ground elements).
fn with_fixed_singletons<F>(n: usize, fixed: &[usize], mut keep: F) -> Result<Vec<u64>>
where
    F: FnMut(&SetPartition, &[usize]) -> bool,
{
    let rest: Vec<usize> = (1..=n).filter(|x| !fixed.contains(x)).collect();
    if rest.len() > ENUM_LIMIT {
        return Err(Error::Limit {
            what: "family construction",
            n: rest.len(),
            max: ENUM_LIMIT,
        });
    }
    let embed = |r: Option<&SetPartition>| -> Result<u64> {
        let mut labels = vec![0u8; n];
        let offset = r.map_or(0, |r| r.num_blocks());
        if let Some(r) = r {
            for (k, &x) in rest.iter().enumerate() {
                labels[x - 1] = r.rgs()[k];
            }
        }
        for (k, &a) in fixed.iter().enumerate() {
            labels[a - 1] = (offset + k) as u8;
        }
        SetPartition::canonicalize(&labels).rank()
    };
    if rest.is_empty() {
        return Ok(vec![embed(None)?]);
    }
    let mut out = Vec::new();
    for r in enumerate_partitions(rest.len())? {
        if keep(&r, &rest) {
            out.push(embed(Some(&r))?);
        }
    }
    Ok(out)
}

fn check_anchors(n: usize, anchors: &[usize]) -> Result<()> {
    let mut sorted = anchors.to_vec();
    sorted.sort_unstable();
    let dup = sorted.windows(2).find(|w| w[0] == w[1]);
    if let Some(w) = dup {
        return Err(Error::Element {
            i: w[0],
            j: w[1],
            n,
        });
    }
    if let Some(&x) = anchors.iter().find(|&&x| x == 0 || x > n) {
        return Err(Error::Element { i: x, j: x, n });
    }
    Ok(())
}

/// All partitions of `[n]` containing `{a}` as a block for every anchor `a`.
pub fn construct_trivial(n: usize, anchors: &[usize]) -> Result<PartitionFamily> {
    super::check_n(n)?;
    check_anchors(n, anchors)?;
    let ranks = with_fixed_singletons(n, anchors, |_, _| true)?;
    Ok(PartitionFamily::from_ranks_unchecked(n, ranks))
}

/// `H(a_1..a_t, b)`: partitions with singletons `{a_1}..{a_t}` and some
/// further singleton `{c}`, `c ≠ b`, together with the `t` partitions
/// `Q(a_l, b)`.
pub fn construct_hm(n: usize, witness: &HmWitness) -> Result<PartitionFamily> {
    super::check_n(n)?;
    let t = witness.t();
    if n < t + 2 {
        return Err(Error::Range(format!(
            "Hilton–Milner family needs n >= t + 2 (n = {}, t = {})",
            n, t
        )));
    }
    witness.check(n)?;
    let b = witness.pivot;
    let mut ranks = with_fixed_singletons(n, &witness.anchors, |r, rest| {
        let sigma = r.sigma();
        rest.iter()
            .enumerate()
            .any(|(k, &x)| x != b && sigma.contains(k + 1))
    })?;
    for &a in &witness.anchors {
        ranks.push(SetPartition::q(n, a, b)?.rank()?);
    }
    Ok(PartitionFamily::from_ranks_unchecked(n, ranks))
}

/// Increasing `k`-subsets of `1..=n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(1, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Finds `(a_1..a_t; b)` with `construct_hm(n, witness) = A` exactly, taking
/// the lexicographically least witness (sorted anchors, then pivot) when
/// several exist.
pub fn recognize_hm(family: &PartitionFamily, t: usize) -> Result<Option<HmWitness>> {
    let n = family.n();
    if t < 1 || n < t + 2 || n - t > ENUM_LIMIT {
        return Ok(None);
    }
    let table = BellTable::build(n - t + 1);
    let expected = table.hm_size(n, t)?;
    if expected.to_u64() != Some(family.len() as u64) {
        return Ok(None);
    }
    let mut candidates = Vec::new();
    for anchors in combinations(n, t) {
        for b in (1..=n).filter(|b| !anchors.contains(b)) {
            candidates.push(HmWitness {
                anchors: anchors.clone(),
                pivot: b,
            });
        }
    }
    let found = candidates.par_iter().find_first(|w| {
        let qs_present = w.anchors.iter().all(|&a| {
            SetPartition::q(n, a, w.pivot)
                .map(|q| family.contains(&q))
                .unwrap_or(false)
        });
        qs_present && construct_hm(n, w).is_ok_and(|h| &h == family)
    });
    Ok(found.cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{is_t_intersecting, triviality_witness};

    #[test]
    fn trivial_sizes() {
        assert_eq!(construct_trivial(4, &[1]).unwrap().len(), 5);
        assert_eq!(construct_trivial(4, &[1, 2]).unwrap().len(), 2);
        let all = construct_trivial(3, &[1, 2, 3]).unwrap();
        assert_eq!(all.partitions(), vec![SetPartition::discrete(3)]);
        assert!(construct_trivial(4, &[1, 1]).is_err());
        assert!(construct_trivial(4, &[5]).is_err());
    }

    #[test]
    fn trivial_members_have_anchor_singletons() {
        let f = construct_trivial(5, &[2, 4]).unwrap();
        assert!(f
            .partitions()
            .iter()
            .all(|p| p.sigma().contains(2) && p.sigma().contains(4)));
        assert_eq!(
            triviality_witness(&f, 2).unwrap().unwrap().anchors,
            vec![2, 4]
        );
    }

    #[test]
    fn hm_small_cases() {
        let h = construct_hm(5, &HmWitness::new(vec![1], 5).unwrap()).unwrap();
        assert_eq!(h.len(), 11);
        let h = construct_hm(4, &HmWitness::new(vec![1, 2], 4).unwrap()).unwrap();
        let got: Vec<String> = h.partitions().iter().map(|p| p.to_string()).collect();
        let mut want = vec!["1|2|3|4", "1,4|2|3", "1|2,4|3"];
        want.sort_by_key(|s| SetPartition::parse(s, Some(4)).unwrap().rank().unwrap());
        assert_eq!(got, want);
        // Q(1,4) and Q(2,4) share only {3}: at n = t + 2 the two Q members
        // meet in n - 3 = t - 1 blocks
        assert!(!is_t_intersecting(&h, 2));
        assert!(is_t_intersecting(&h, 1));
        assert_eq!(triviality_witness(&h, 2).unwrap(), None);
        let h5 = construct_hm(5, &HmWitness::new(vec![1, 2], 5).unwrap()).unwrap();
        assert!(is_t_intersecting(&h5, 2));
        assert!(construct_hm(3, &HmWitness::new(vec![1, 2], 3).unwrap()).is_err());
    }

    #[test]
    fn hm_is_not_trivially_intersecting() {
        let h = construct_hm(5, &HmWitness::new(vec![1], 5).unwrap()).unwrap();
        assert_eq!(triviality_witness(&h, 1).unwrap(), None);
    }

    #[test]
    fn recognize_round_trip() {
        let w = HmWitness::new(vec![2], 5).unwrap();
        let h = construct_hm(6, &w).unwrap();
        assert_eq!(recognize_hm(&h, 1).unwrap(), Some(w));
        assert_eq!(
            recognize_hm(&construct_trivial(6, &[1]).unwrap(), 1).unwrap(),
            None
        );
        let mut damaged = construct_hm(6, &HmWitness::new(vec![1], 4).unwrap()).unwrap();
        let first = damaged.partitions()[0].clone();
        damaged.remove(&first);
        assert_eq!(recognize_hm(&damaged, 1).unwrap(), None);
    }

    #[test]
    fn combinations_lex() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
