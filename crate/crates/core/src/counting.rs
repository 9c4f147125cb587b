//! Exact Bell numbers, singleton-free Bell numbers, binomials, and the
//! numeric inequalities used to bound non-trivial intersecting families.
//!
//! Everything here is big-integer arithmetic; no floating point.

use std::fmt;
use std::ops::Deref;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative count.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> BigCount {
        BigCount(BigUint::zero())
    }

    pub fn one() -> BigCount {
        BigCount(BigUint::one())
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }
}

impl Deref for BigCount {
    type Target = BigUint;
    fn deref(&self) -> &BigUint {
        &self.0
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<usize> for BigCount {
    fn from(v: usize) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Serialized as a decimal string so JSON never truncates.
impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

/// `B_m` and `B̃_m` for `0 <= m <= n_max`, plus Pascal's triangle up to
/// `n_max`.
#[derive(Clone, Debug)]
pub struct BellTable {
    n_max: usize,
    bell: Vec<BigUint>,
    bell_sf: Vec<BigUint>,
    binom: Vec<Vec<BigUint>>,
}

impl BellTable {
    /// Builds the table: `B̃` by its own recurrence, then `B` as the
    /// singleton-count decomposition sum, then cross-checks `B` against the
    /// classical recurrence `B_{m+1} = Σ C(m,k) B_k`.
    ///
    /// Panics if the cross-check fails; that would be an arithmetic bug.
    pub fn build(n_max: usize) -> BellTable {
        let mut binom: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
        for m in 0..=n_max {
            let mut row = vec![BigUint::one(); m + 1];
            for k in 1..m {
                row[k] = &binom[m - 1][k - 1] + &binom[m - 1][k];
            }
            binom.push(row);
        }

        let mut bell_sf = vec![BigUint::one()];
        for m in 1..=n_max {
            // B̃_m = Σ_{k=1}^{m-1} C(m-1,k) B̃_{m-1-k}
            let v = (1..m).fold(BigUint::zero(), |acc, k| {
                acc + &binom[m - 1][k] * &bell_sf[m - 1 - k]
            });
            bell_sf.push(v);
        }

        let bell: Vec<BigUint> = (0..=n_max)
            .map(|m| {
                // B_m = Σ_{k=0}^{m} C(m,k) B̃_{m-k}
                (0..=m).fold(BigUint::zero(), |acc, k| {
                    acc + &binom[m][k] * &bell_sf[m - k]
                })
            })
            .collect();

        let table = BellTable {
            n_max,
            bell,
            bell_sf,
            binom,
        };
        assert!(table.bell[0].is_one(), "B_0 must be 1");
        for m in 0..n_max {
            let next = (0..=m).fold(BigUint::zero(), |acc, k| {
                acc + &table.binom[m][k] * &table.bell[k]
            });
            assert_eq!(
                next,
                table.bell[m + 1],
                "Bell cross-check failed at {}",
                m + 1
            );
        }
        table
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn check(&self, m: usize) -> Result<()> {
        if m > self.n_max {
            return Err(Error::Range(format!(
                "index {} beyond table size {}",
                m, self.n_max
            )));
        }
        Ok(())
    }

    pub fn bell(&self, m: usize) -> Result<BigCount> {
        self.check(m)?;
        Ok(BigCount(self.bell[m].clone()))
    }

    /// Singleton-free Bell number `B̃_m`.
    pub fn bell_sf(&self, m: usize) -> Result<BigCount> {
        self.check(m)?;
        Ok(BigCount(self.bell_sf[m].clone()))
    }

    /// `C(m, k)`, zero when `k > m`.
    pub fn binomial(&self, m: usize, k: usize) -> Result<BigCount> {
        self.check(m)?;
        Ok(BigCount(
            self.binom[m].get(k).cloned().unwrap_or_else(BigUint::zero),
        ))
    }

    /// Checks the three identities linking `B` and `B̃` at index `m`.
    /// The shift identity `B_m = B̃_m + B̃_{m+1}` needs `m < n_max`.
    pub fn identities_at(&self, m: usize) -> Result<IdentityCheck> {
        self.check(m)?;
        let sum = (0..=m).fold(BigUint::zero(), |acc, k| {
            acc + &self.binom[m][k] * &self.bell_sf[m - k]
        });
        let sf = if m == 0 {
            BigUint::one()
        } else {
            (1..m).fold(BigUint::zero(), |acc, k| {
                acc + &self.binom[m - 1][k] * &self.bell_sf[m - 1 - k]
            })
        };
        let shift = if m < self.n_max {
            Some(self.bell[m] == &self.bell_sf[m] + &self.bell_sf[m + 1])
        } else {
            None
        };
        Ok(IdentityCheck {
            m,
            bell_sum: sum == self.bell[m],
            bell_sf_recurrence: sf == self.bell_sf[m],
            shift,
        })
    }

    fn need(&self, m: usize) -> Result<()> {
        if m > self.n_max {
            Err(Error::Range(format!(
                "needs Bell numbers up to index {}, table stops at {}",
                m, self.n_max
            )))
        } else {
            Ok(())
        }
    }

    /// `|H(a_1..a_t, b)| = B_{n-t} - B̃_{n-t} - B̃_{n-t-1} + t`.
    pub fn hm_size(&self, n: usize, t: usize) -> Result<BigCount> {
        if t < 1 || n < t + 2 {
            return Err(Error::Range(format!(
                "hm_size needs 1 <= t and t + 2 <= n (got n = {}, t = {})",
                n, t
            )));
        }
        let m = n - t;
        self.need(m)?;
        // B_m >= B̃_m + B̃_{m-1} since B_m = B̃_m + B̃_{m+1} and B̃ grows from index 1 on
        Ok(BigCount(
            &self.bell[m] + BigUint::from(t) - &self.bell_sf[m] - &self.bell_sf[m - 1],
        ))
    }

    /// `c·B_{n-t-1} < B_{n-t} - B̃_{n-t} - B̃_{n-t-1}`.
    pub fn check_lemma_less(&self, c: u64, t: usize, n: usize) -> Result<bool> {
        if c < 1 || t < 1 || n < t + 2 {
            return Err(Error::Range(format!(
                "less needs c, t >= 1 and n >= t + 2 (got c = {}, t = {}, n = {})",
                c, t, n
            )));
        }
        let m = n - t;
        self.need(m)?;
        let lhs = BigUint::from(c) * &self.bell[m - 1] + &self.bell_sf[m] + &self.bell_sf[m - 1];
        Ok(lhs < self.bell[m])
    }

    /// `t·B_{n-r+1} < B̃_{n-t-1}` for `t + 4 <= r <= n - 2`.
    pub fn check_lemma_less02(&self, t: usize, r: usize, n: usize) -> Result<bool> {
        if t < 1 || r < t + 4 || r + 2 > n {
            return Err(Error::Range(format!(
                "less02 needs t + 4 <= r <= n - 2 (got t = {}, r = {}, n = {})",
                t, r, n
            )));
        }
        self.need(n - t - 1)?;
        Ok(BigUint::from(t) * &self.bell[n - r + 1] < self.bell_sf[n - t - 1])
    }

    /// `B̃_{n-t-1} > Σ_{k=s+1}^{n} C(n,k) B̃_{n-k}` with `s = ⌊n/(t+1) + t - 1⌋`.
    pub fn check_lemma_less03(&self, t: usize, n: usize) -> Result<bool> {
        if t < 1 || n <= t + 1 {
            return Err(Error::Range(format!(
                "less03 needs n > t + 1 (got t = {}, n = {})",
                t, n
            )));
        }
        self.need(n)?;
        Ok(self.bell_sf[n - t - 1] > self.upper_tail(t, n))
    }

    fn upper_tail(&self, t: usize, n: usize) -> BigUint {
        let s = split_point(n, t);
        (s + 1..=n).fold(BigUint::zero(), |acc, k| {
            acc + &self.binom[n][k] * &self.bell_sf[n - k]
        })
    }

    /// Upper bound on a compressed family whose singleton sets form a
    /// t-intersecting family:
    /// `Σ_{k=t+1}^{s} C(n-t,k-t) B̃_{n-k} + Σ_{k=s+1}^{n} C(n,k) B̃_{n-k}`.
    pub fn eval_eq5_bound(&self, n: usize, t: usize) -> Result<BigCount> {
        if t < 1 || n < t + 1 {
            return Err(Error::Range(format!(
                "bound needs n >= t + 1 (got n = {}, t = {})",
                n, t
            )));
        }
        self.need(n)?;
        let s = split_point(n, t);
        let low = (t + 1..=s).fold(BigUint::zero(), |acc, k| {
            acc + &self.binom[n - t][k - t] * &self.bell_sf[n - k]
        });
        Ok(BigCount(low + self.upper_tail(t, n)))
    }

    /// Evaluates one lemma at `n`; `None` when `n` is outside the lemma's
    /// domain.
    pub fn lemma_holds(&self, lemma: Lemma, t: usize, n: usize) -> Result<Option<bool>> {
        if !lemma.applies(t, n) {
            return Ok(None);
        }
        let v = match lemma {
            Lemma::Less { c } => self.check_lemma_less(c, t, n)?,
            Lemma::Less02 { r: Some(r) } => self.check_lemma_less02(t, r, n)?,
            Lemma::Less02 { r: None } => {
                let mut all = true;
                for r in t + 4..=n - 2 {
                    all &= self.check_lemma_less02(t, r, n)?;
                }
                all
            }
            Lemma::Less03 => self.check_lemma_less03(t, n)?,
            Lemma::Eq5Dominates => {
                let bound = self.eval_eq5_bound(n, t)?;
                let hm = self.hm_size(n, t)?;
                bound.0 + BigUint::from(t) >= hm.0
            }
        };
        Ok(Some(v))
    }
}

/// `⌊n/(t+1) + t - 1⌋` in integer arithmetic.
pub fn split_point(n: usize, t: usize) -> usize {
    (n + (t - 1) * (t + 1)) / (t + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub m: usize,
    pub bell_sum: bool,
    pub bell_sf_recurrence: bool,
    pub shift: Option<bool>,
}

impl IdentityCheck {
    pub fn all_hold(&self) -> bool {
        self.bell_sum && self.bell_sf_recurrence && self.shift.unwrap_or(true)
    }
}

pub fn build_table(n_max: usize) -> BellTable {
    BellTable::build(n_max)
}

/// The "for large n" inequalities that can be scanned for a threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "lemma", rename_all = "lowercase")]
pub enum Lemma {
    /// `c·B_{n-t-1} < B_{n-t} - B̃_{n-t} - B̃_{n-t-1}`
    Less { c: u64 },
    /// `t·B_{n-r+1} < B̃_{n-t-1}`; `r: None` requires every `r` in the window.
    Less02 { r: Option<usize> },
    /// Tail sum dominated by `B̃_{n-t-1}`.
    Less03,
    /// `eval_eq5_bound(n,t) >= hm_size(n,t) - t`.
    #[serde(rename = "eq5")]
    Eq5Dominates,
}

impl Lemma {
    /// Parses an identifier (`less`, `less02`, `less03`, `eq5`) with its
    /// extra parameters.
    pub fn from_name(name: &str, c: Option<u64>, r: Option<usize>) -> Result<Lemma> {
        match name {
            "less" => Ok(Lemma::Less { c: c.unwrap_or(1) }),
            "less02" => Ok(Lemma::Less02 { r }),
            "less03" => Ok(Lemma::Less03),
            "eq5" => Ok(Lemma::Eq5Dominates),
            other => Err(Error::UnknownLemma(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Lemma::Less { .. } => "less",
            Lemma::Less02 { .. } => "less02",
            Lemma::Less03 => "less03",
            Lemma::Eq5Dominates => "eq5",
        }
    }

    /// Smallest `n` at which the inequality is defined.
    pub fn min_n(&self, t: usize) -> usize {
        match self {
            Lemma::Less { .. } | Lemma::Eq5Dominates => t + 2,
            Lemma::Less02 { r: Some(r) } => (r + 2).max(t + 6),
            Lemma::Less02 { r: None } => t + 6,
            Lemma::Less03 => t + 2,
        }
    }

    fn applies(&self, t: usize, n: usize) -> bool {
        match self {
            Lemma::Less02 { r: Some(r) } => *r >= t + 4 && r + 2 <= n,
            _ => n >= self.min_n(t),
        }
    }
}

/// Outcome of scanning one inequality over a range of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub lemma: Lemma,
    pub t: usize,
    /// `(n, holds)` for every `n` in range where the inequality is defined.
    pub values: Vec<(usize, bool)>,
    /// Smallest `n` from which the inequality holds through the end of the
    /// range.
    pub persistent_from: Option<usize>,
    /// True iff the inequality never flips back to false once true.
    pub monotone: bool,
}

impl ScanReport {
    pub fn never_holds(&self) -> bool {
        self.values.iter().all(|&(_, v)| !v)
    }
}

/// Empirical threshold for a "holds for all large n" inequality.
pub fn threshold_scan(
    table: &BellTable,
    lemma: Lemma,
    t: usize,
    n_range: std::ops::RangeInclusive<usize>,
) -> Result<ScanReport> {
    if t < 1 {
        return Err(Error::Range("t must be positive".into()));
    }
    let mut values = Vec::new();
    for n in n_range {
        if let Some(v) = table.lemma_holds(lemma, t, n)? {
            values.push((n, v));
        }
    }
    let tail_true = values.iter().rev().take_while(|&&(_, v)| v).count();
    let persistent_from = if tail_true == 0 {
        None
    } else {
        Some(values[values.len() - tail_true].0)
    };
    let first_true = values.iter().position(|&(_, v)| v);
    let monotone = match first_true {
        None => true,
        Some(p) => values[p..].iter().all(|&(_, v)| v),
    };
    Ok(ScanReport {
        lemma,
        t,
        values,
        persistent_from,
        monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conventions() {
        let tb = build_table(6);
        assert_eq!(tb.bell(0).unwrap(), 1);
        assert_eq!(tb.bell_sf(0).unwrap(), 1);
        assert_eq!(tb.bell_sf(1).unwrap(), 0);
        assert!(tb.bell(7).is_err());
    }

    #[test]
    fn shift_identity_instance() {
        let tb = build_table(6);
        assert_eq!(tb.bell(4).unwrap(), 15);
        assert_eq!(tb.bell_sf(4).unwrap(), 4);
        assert_eq!(tb.bell_sf(5).unwrap(), 11);
        for m in 0..=6 {
            assert!(tb.identities_at(m).unwrap().all_hold());
        }
        assert_eq!(tb.identities_at(6).unwrap().shift, None);
    }

    #[test]
    fn hm_size_examples() {
        let tb = build_table(12);
        assert_eq!(tb.hm_size(5, 1).unwrap(), 11);
        assert_eq!(tb.hm_size(4, 2).unwrap(), 3);
        for t in 1..=5 {
            assert_eq!(tb.hm_size(t + 2, t).unwrap(), (1 + t) as u64);
        }
        assert!(tb.hm_size(3, 2).is_err());
    }

    #[test]
    fn lemma_less_examples() {
        let tb = build_table(10);
        assert!(tb.check_lemma_less(1, 1, 4).unwrap());
        assert!(!tb.check_lemma_less(4, 1, 4).unwrap());
        assert!(!tb.check_lemma_less(1, 1, 3).unwrap());
        assert!(tb.check_lemma_less(1, 1, 2).is_err());
    }

    #[test]
    fn lemma_less02_examples() {
        let tb = build_table(10);
        assert!(tb.check_lemma_less02(1, 5, 7).unwrap());
        assert!(tb.check_lemma_less02(2, 6, 8).unwrap());
        // B_3 = 5 vs B̃_7 = 162
        assert_eq!(tb.bell_sf(7).unwrap(), 162);
        assert!(tb.check_lemma_less02(1, 7, 9).unwrap());
        assert!(tb.check_lemma_less02(1, 4, 7).is_err());
        assert!(tb.check_lemma_less02(1, 6, 7).is_err());
    }

    #[test]
    fn lemma_less03_small() {
        let tb = build_table(10);
        assert!(!tb.check_lemma_less03(1, 3).unwrap());
        assert!(tb.check_lemma_less03(1, 2).is_err());
    }

    #[test]
    fn split_point_is_exact_floor() {
        assert_eq!(split_point(8, 1), 4);
        assert_eq!(split_point(3, 1), 1);
        assert_eq!(split_point(6, 1), 3);
        // ⌊7/3 + 1⌋ = 3
        assert_eq!(split_point(7, 2), 3);
        for t in 1..6 {
            assert_eq!(split_point(t + 1, t), t);
        }
    }

    #[test]
    fn bound_boundary() {
        let tb = build_table(10);
        for t in 1..=5 {
            assert_eq!(tb.eval_eq5_bound(t + 1, t).unwrap(), 1);
        }
        assert!(tb.eval_eq5_bound(1, 1).is_err());
    }

    #[test]
    fn unknown_lemma() {
        assert_eq!(
            Lemma::from_name("less04", None, None),
            Err(Error::UnknownLemma("less04".into()))
        );
    }

    #[test]
    fn scan_reports_tail() {
        let tb = build_table(40);
        let rep = threshold_scan(&tb, Lemma::Less { c: 1 }, 1, 3..=40).unwrap();
        assert_eq!(rep.values.first(), Some(&(3, false)));
        assert_eq!(rep.values.len(), 38);
        assert!(rep.persistent_from.is_some());
        assert!(rep.monotone);
    }

    #[test]
    fn table_reports_range_errors() {
        let tb = build_table(5);
        assert!(matches!(tb.hm_size(9, 1), Err(Error::Range(_))));
        assert!(matches!(tb.check_lemma_less03(1, 9), Err(Error::Range(_))));
    }
}
