use super::{bell_u64, unrank, SetPartition, ENUM_LIMIT};
use crate::error::{Error, Result};

/// Lexicographic walk over restricted-growth sequences.
///
/// `prefix_max[k]` holds `max(rgs[0..=k])`, so the successor step is O(n)
/// without rescanning.
pub struct PartitionIter {
    rgs: Vec<u8>,
    prefix_max: Vec<u8>,
    remaining: u64,
}

impl PartitionIter {
    /// Iterates ranks `start..end` of the partitions of `[n]`.
    pub fn range(n: usize, start: u64, end: u64) -> Result<PartitionIter> {
        check_limit(n)?;
        let total = bell_u64(n)?;
        if start > end || end > total {
            return Err(Error::Range(format!(
                "rank range {}..{} invalid for n = {} (B_n = {})",
                start, end, n, total
            )));
        }
        let first = if start < total {
            unrank(n, start)?.rgs
        } else {
            vec![0; n]
        };
        let mut prefix_max = Vec::with_capacity(n);
        let mut m = 0u8;
        for &v in &first {
            m = m.max(v);
            prefix_max.push(m);
        }
        Ok(PartitionIter {
            rgs: first,
            prefix_max,
            remaining: end - start,
        })
    }

    fn advance(&mut self) {
        let n = self.rgs.len();
        for k in (1..n).rev() {
            if self.rgs[k] <= self.prefix_max[k - 1] {
                self.rgs[k] += 1;
                self.prefix_max[k] = self.prefix_max[k - 1].max(self.rgs[k]);
                for l in k + 1..n {
                    self.rgs[l] = 0;
                    self.prefix_max[l] = self.prefix_max[k];
                }
                return;
            }
        }
    }

    /// Visits each remaining sequence without allocating a partition per step.
    pub fn for_each_rgs<F: FnMut(&[u8])>(mut self, mut f: F) {
        while self.remaining > 0 {
            f(&self.rgs);
            self.remaining -= 1;
            if self.remaining > 0 {
                self.advance();
            }
        }
    }
}

impl Iterator for PartitionIter {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.remaining == 0 {
            return None;
        }
        let out = SetPartition {
            rgs: self.rgs.clone(),
        };
        self.remaining -= 1;
        if self.remaining > 0 {
            self.advance();
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

impl ExactSizeIterator for PartitionIter {}

fn check_limit(n: usize) -> Result<()> {
    if n == 0 || n > ENUM_LIMIT {
        return Err(Error::Limit {
            what: "enumerate_partitions",
            n,
            max: ENUM_LIMIT,
        });
    }
    Ok(())
}

/// Every partition of `[n]` exactly once, in lexicographic rgs order.
pub fn enumerate_partitions(n: usize) -> Result<PartitionIter> {
    check_limit(n)?;
    PartitionIter::range(n, 0, bell_u64(n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let two: Vec<Vec<u8>> = enumerate_partitions(2)
            .unwrap()
            .map(|p| p.rgs().to_vec())
            .collect();
        assert_eq!(two, vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(enumerate_partitions(3).unwrap().count(), 5);
        assert_eq!(enumerate_partitions(1).unwrap().count(), 1);
    }

    #[test]
    fn strictly_increasing() {
        let all: Vec<SetPartition> = enumerate_partitions(7).unwrap().collect();
        assert!(all.windows(2).all(|w| w[0].rgs() < w[1].rgs()));
        assert_eq!(all.len(), 877);
    }

    #[test]
    fn limit_enforced() {
        assert!(matches!(
            enumerate_partitions(ENUM_LIMIT + 1),
            Err(Error::Limit { .. })
        ));
        assert!(enumerate_partitions(0).is_err());
    }

    #[test]
    fn ranges_tile_the_full_walk() {
        let full: Vec<SetPartition> = enumerate_partitions(6).unwrap().collect();
        let mut tiled = Vec::new();
        for (s, e) in [(0, 50), (50, 51), (51, 203)] {
            tiled.extend(PartitionIter::range(6, s, e).unwrap());
        }
        assert_eq!(tiled, full);
        assert_eq!(PartitionIter::range(6, 203, 203).unwrap().count(), 0);
    }
}
