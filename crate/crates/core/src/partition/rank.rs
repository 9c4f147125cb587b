use std::sync::OnceLock;

use super::SetPartition;
use crate::error::{Error, Result};

/// Largest `n` whose Bell number fits in a `u64` rank (`B_25 < 2^64 < B_26`).
pub const RANK_LIMIT: usize = 25;

/// `completions[len][m]`: number of ways to extend a restricted-growth
/// prefix that already uses `m` blocks by `len` more entries.
fn completions() -> &'static [[u64; RANK_LIMIT + 2]; RANK_LIMIT + 1] {
    static TABLE: OnceLock<[[u64; RANK_LIMIT + 2]; RANK_LIMIT + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[0u64; RANK_LIMIT + 2]; RANK_LIMIT + 1];
        t[0] = [1; RANK_LIMIT + 2];
        for len in 1..=RANK_LIMIT {
            for m in 0..=RANK_LIMIT {
                // entries with len + m > RANK_LIMIT are never read; saturate them
                t[len][m] = (m as u64)
                    .saturating_mul(t[len - 1][m])
                    .saturating_add(t[len - 1][m + 1]);
            }
        }
        t
    })
}

/// `B_n` as a machine word, for `n <= RANK_LIMIT`.
pub fn bell_u64(n: usize) -> Result<u64> {
    if n > RANK_LIMIT {
        return Err(Error::Limit {
            what: "rank",
            n,
            max: RANK_LIMIT,
        });
    }
    Ok(if n == 0 { 1 } else { completions()[n - 1][1] })
}

/// Position of `p` among all partitions of `[n]` in lexicographic rgs order.
pub fn rank(p: &SetPartition) -> Result<u64> {
    let n = p.n();
    if n > RANK_LIMIT {
        return Err(Error::Limit {
            what: "rank",
            n,
            max: RANK_LIMIT,
        });
    }
    let table = completions();
    let mut r = 0u64;
    let mut blocks = 1usize;
    for (k, &v) in p.rgs().iter().enumerate().skip(1) {
        r += v as u64 * table[n - k - 1][blocks];
        if v as usize == blocks {
            blocks += 1;
        }
    }
    Ok(r)
}

/// Inverse of [`rank`].
pub fn unrank(n: usize, index: u64) -> Result<SetPartition> {
    if n == 0 || n > RANK_LIMIT {
        return Err(Error::Limit {
            what: "unrank",
            n,
            max: RANK_LIMIT,
        });
    }
    let total = bell_u64(n)?;
    if index >= total {
        return Err(Error::Range(format!(
            "index {} out of range for n = {} (B_n = {})",
            index, n, total
        )));
    }
    let table = completions();
    let mut rest = index;
    let mut blocks = 1usize;
    let mut rgs = Vec::with_capacity(n);
    rgs.push(0u8);
    for k in 1..n {
        let w = table[n - k - 1][blocks];
        let v = (rest / w).min(blocks as u64);
        rest -= v * w;
        rgs.push(v as u8);
        if v as usize == blocks {
            blocks += 1;
        }
    }
    Ok(SetPartition::from_rgs_unchecked(rgs))
}

impl SetPartition {
    pub fn rank(&self) -> Result<u64> {
        rank(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_partitions;

    #[test]
    fn bell_words() {
        let expected = [1u64, 1, 2, 5, 15, 52, 203, 877, 4140, 21147];
        for (n, &b) in expected.iter().enumerate() {
            assert_eq!(bell_u64(n).unwrap(), b);
        }
        assert_eq!(bell_u64(25).unwrap(), 4_638_590_332_229_999_353);
        assert!(bell_u64(26).is_err());
    }

    #[test]
    fn first_and_last() {
        assert_eq!(
            rank(&SetPartition::from_rgs(vec![0; 7]).unwrap()).unwrap(),
            0
        );
        assert_eq!(unrank(3, 4).unwrap().rgs(), &[0, 1, 2]);
        assert!(matches!(unrank(3, 5), Err(Error::Range(_))));
    }

    #[test]
    fn rank_matches_enumeration_order() {
        for n in 1..=8 {
            for (i, p) in enumerate_partitions(n).unwrap().enumerate() {
                assert_eq!(rank(&p).unwrap(), i as u64);
                assert_eq!(unrank(n, i as u64).unwrap(), p);
            }
        }
    }

    #[test]
    fn round_trip_at_rank_limit() {
        let last = bell_u64(RANK_LIMIT).unwrap() - 1;
        let p = unrank(RANK_LIMIT, last).unwrap();
        assert_eq!(p, SetPartition::discrete(RANK_LIMIT));
        assert_eq!(rank(&p).unwrap(), last);
    }
}
