//! Mechanical checks of the counting, splitting and extremal claims over
//! small parameter grids.
//!
//! Each claim produces one [`Finding`]. Claims that are only stated for
//! sufficiently large `n` are marked asymptotic: failing them at small `n`
//! is reported, but it is not a refutation of the statement.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::counting::{build_table, threshold_scan, BellTable, Lemma};
use crate::error::{Error, Result};
use crate::family::sample::random_intersecting_family;
use crate::family::{
    combinations, compress, construct_hm, family_split, first_violation, is_compressed,
    is_t_intersecting, recognize_hm, sigma_family, triviality_witness, unsplit_search, verify_undo,
    HmWitness, PairOrder, PartitionFamily,
};
use crate::partition::{bell_u64, PartitionIter};
use crate::search::{
    build_graph, enumerate_extremal, iso_classes, max_family, Mode, SearchOptions,
};

pub const DEFAULT_SEED: u64 = 0x5EED_2024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    /// `B_{m+1} = Σ C(m,k) B_k`, `B_m = Σ C(m,k) B̃_k`, `B_m = B̃_m + B̃_{m+1}`.
    BellIdentities,
    /// Enumeration yields `B_n` partitions, `B̃_n` of them singleton-free.
    EnumerationCount,
    /// `|H(a_1..a_t, b)|` matches the closed form.
    HmSize,
    /// `H(a_1..a_t, b)` is non-trivially t-intersecting.
    HmIntersecting,
    /// `S_ij` preserves size and the t-intersecting property.
    SplitPreserves,
    /// Splitting reaches a compressed family whose `σ` is t-intersecting.
    Compression,
    /// `S_ij(A) = H` with `A` t-intersecting forces `A = H` (`n >= t + 3`).
    UndoSplit,
    /// Maximum t-intersecting families have `B_{n-t}` members, all trivial.
    TrivialBound,
    /// Maximum non-trivial families have `|H|` members, all of HM type.
    HmExtremal,
    LemmaLess,
    LemmaLess02,
    LemmaLess03,
    /// The compressed-family bound is at least `|H| - t`.
    Eq5Bound,
}

impl Claim {
    pub const ALL: [Claim; 13] = [
        Claim::BellIdentities,
        Claim::EnumerationCount,
        Claim::HmSize,
        Claim::HmIntersecting,
        Claim::SplitPreserves,
        Claim::Compression,
        Claim::UndoSplit,
        Claim::TrivialBound,
        Claim::HmExtremal,
        Claim::LemmaLess,
        Claim::LemmaLess02,
        Claim::LemmaLess03,
        Claim::Eq5Bound,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::BellIdentities => "bell-identities",
            Claim::EnumerationCount => "enumeration-count",
            Claim::HmSize => "hm-size",
            Claim::HmIntersecting => "hm-intersecting",
            Claim::SplitPreserves => "split-preserves",
            Claim::Compression => "compression",
            Claim::UndoSplit => "undo-split",
            Claim::TrivialBound => "trivial-bound",
            Claim::HmExtremal => "hm-extremal",
            Claim::LemmaLess => "lemma-less",
            Claim::LemmaLess02 => "lemma-less02",
            Claim::LemmaLess03 => "lemma-less03",
            Claim::Eq5Bound => "eq5-bound",
        }
    }

    /// Stated only for `n >= n_0(t)`.
    pub fn asymptotic(self) -> bool {
        matches!(
            self,
            Claim::TrivialBound
                | Claim::HmExtremal
                | Claim::LemmaLess
                | Claim::LemmaLess02
                | Claim::LemmaLess03
                | Claim::Eq5Bound
        )
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Claim> {
        Claim::ALL.into_iter().find(|c| c.id() == s).ok_or_else(|| {
            let ids: Vec<&str> = Claim::ALL.iter().map(|c| c.id()).collect();
            Error::Range(format!("unknown claim `{}` (one of {})", s, ids.join(", ")))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    RefutedAtN,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::RefutedAtN => "refuted-at-n",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Finding {
    pub claim: &'static str,
    pub status: Status,
    pub asymptotic: bool,
    /// Where the claim failed (the largest failing `n` for asymptotic
    /// claims).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    pub evidence: Value,
}

impl Finding {
    fn verified(claim: Claim, evidence: Value) -> Finding {
        Finding {
            claim: claim.id(),
            status: Status::Verified,
            asymptotic: claim.asymptotic(),
            n: None,
            t: None,
            evidence,
        }
    }

    fn refuted(claim: Claim, n: usize, t: Option<usize>, evidence: Value) -> Finding {
        Finding {
            claim: claim.id(),
            status: Status::RefutedAtN,
            asymptotic: claim.asymptotic(),
            n: Some(n),
            t,
            evidence,
        }
    }

    fn skipped(claim: Claim, reason: impl Into<String>) -> Finding {
        Finding {
            claim: claim.id(),
            status: Status::Skipped,
            asymptotic: claim.asymptotic(),
            n: None,
            t: None,
            evidence: json!({ "reason": reason.into() }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub claims: Vec<Claim>,
    /// Restricts every claim's default `n` grid.
    pub n_range: Option<RangeInclusive<usize>>,
    /// Restricts every claim's default `t` grid.
    pub t_range: Option<RangeInclusive<usize>>,
    pub seed: u64,
    /// Random families per `(n, t)` for the sampled claims.
    pub samples: usize,
    pub search: SearchOptions,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            claims: Claim::ALL.to_vec(),
            n_range: None,
            t_range: None,
            seed: DEFAULT_SEED,
            samples: 1000,
            search: SearchOptions::default(),
        }
    }
}

impl VerifyConfig {
    fn ns(&self, default: RangeInclusive<usize>) -> Vec<usize> {
        default
            .filter(|n| self.n_range.as_ref().is_none_or(|r| r.contains(n)))
            .collect()
    }

    fn ts(&self, default: RangeInclusive<usize>) -> Vec<usize> {
        default
            .filter(|t| self.t_range.as_ref().is_none_or(|r| r.contains(t)))
            .collect()
    }

    fn rng(&self, claim: Claim, n: usize, t: usize) -> ChaCha8Rng {
        let salt = (claim as u64) << 32 | (n as u64) << 16 | t as u64;
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

/// Runs every configured claim, one finding each.
pub fn cmd_verify(cfg: &VerifyConfig) -> Result<Vec<Finding>> {
    cfg.claims.iter().map(|&c| check_claim(cfg, c)).collect()
}

/// 1 if a claim is refuted outright, 2 if only asymptotic claims fail at
/// the tested sizes, 0 otherwise.
pub fn exit_code(findings: &[Finding]) -> i32 {
    let refuted = |asym: bool| {
        findings
            .iter()
            .any(|f| f.status == Status::RefutedAtN && f.asymptotic == asym)
    };
    if refuted(false) {
        1
    } else if refuted(true) {
        2
    } else {
        0
    }
}

pub fn check_claim(cfg: &VerifyConfig, claim: Claim) -> Result<Finding> {
    match claim {
        Claim::BellIdentities => bell_identities(cfg),
        Claim::EnumerationCount => enumeration_count(cfg),
        Claim::HmSize => hm_size(cfg),
        Claim::HmIntersecting => hm_intersecting(cfg),
        Claim::SplitPreserves => split_preserves(cfg),
        Claim::Compression => compression(cfg),
        Claim::UndoSplit => undo_split(cfg),
        Claim::TrivialBound => trivial_bound(cfg),
        Claim::HmExtremal => hm_extremal(cfg),
        Claim::LemmaLess => lemma_scan(cfg, claim, &[1, 2, 3, 4].map(|c| Lemma::Less { c })),
        Claim::LemmaLess02 => lemma_scan(cfg, claim, &[Lemma::Less02 { r: None }]),
        Claim::LemmaLess03 => lemma_scan(cfg, claim, &[Lemma::Less03]),
        Claim::Eq5Bound => lemma_scan(cfg, claim, &[Lemma::Eq5Dominates]),
    }
}

fn members(f: &PartitionFamily) -> Vec<String> {
    f.partitions().iter().map(|p| p.to_string()).collect()
}

fn bell_identities(cfg: &VerifyConfig) -> Result<Finding> {
    let claim = Claim::BellIdentities;
    let ns = cfg.ns(0..=25);
    let Some(&max) = ns.last() else {
        return Ok(Finding::skipped(claim, "empty n range"));
    };
    let table = build_table(max + 1);
    for &m in &ns {
        let check = table.identities_at(m)?;
        if !check.all_hold() {
            return Ok(Finding::refuted(
                claim,
                m,
                None,
                json!({ "identities": check }),
            ));
        }
    }
    Ok(Finding::verified(claim, json!({ "n": ns })))
}

fn enumeration_count(cfg: &VerifyConfig) -> Result<Finding> {
    let claim = Claim::EnumerationCount;
    let ns = cfg.ns(1..=12);
    let Some(&max) = ns.last() else {
        return Ok(Finding::skipped(claim, "empty n range"));
    };
    let table = build_table(max);
    for &n in &ns {
        let (total, free) = count_partitions(n)?;
        let (b, bsf) = (table.bell(n)?, table.bell_sf(n)?);
        if b != total || bsf != free {
            return Ok(Finding::refuted(
                claim,
                n,
                None,
                json!({ "enumerated": total, "singleton_free": free, "bell": b, "bell_sf": bsf }),
            ));
        }
    }
    Ok(Finding::verified(claim, json!({ "n": ns })))
}

/// Number of partitions of `[n]` and how many have no singleton block.
pub fn count_partitions(n: usize) -> Result<(u64, u64)> {
    let mut total = 0u64;
    let mut free = 0u64;
    let mut sizes = vec![0u8; n];
    PartitionIter::range(n, 0, bell_u64(n)?)?.for_each_rgs(|rgs| {
        total += 1;
        sizes.iter_mut().for_each(|s| *s = 0);
        for &b in rgs {
            sizes[b as usize] += 1;
        }
        if sizes.iter().all(|&s| s != 1) {
            free += 1;
        }
    });
    Ok((total, free))
}

fn hm_grid(cfg: &VerifyConfig) -> Vec<(usize, usize)> {
    let mut grid = Vec::new();
    for t in cfg.ts(1..=3) {
        for n in cfg.ns(t + 2..=9) {
            grid.push((n, t));
        }
    }
    grid
}

fn hm_witness(n: usize, t: usize) -> Result<HmWitness> {
    HmWitness::new((1..=t).collect(), n)
}

fn hm_size(cfg: &VerifyConfig) -> Result<Finding> {
    let claim = Claim::HmSize;
    let grid = hm_grid(cfg);
    if grid.is_empty() {
        return Ok(Finding::skipped(claim, "empty grid"));
    }
    let table = build_table(9);
    for &(n, t) in &grid {
        let built = construct_hm(n, &hm_witness(n, t)?)?.len();
        let formula = table.hm_size(n, t)?;
        if formula != built as u64 {
            return Ok(Finding::refuted(
                claim,
                n,
                Some(t),
                json!({ "constructed": built, "formula": formula }),
            ));
        }
    }
    Ok(Finding::verified(claim, json!({ "grid": grid })))
}

fn hm_intersecting(cfg: &VerifyConfig) -> Result<Finding> {
    let claim = Claim::HmIntersecting;
    let grid = hm_grid(cfg);
    if grid.is_empty() {
        return Ok(Finding::skipped(claim, "empty grid"));
    }
    let mut failures = Vec::new();
    for &(n, t) in &grid {
        let w = hm_witness(n, t)?;
        let h = construct_hm(n, &w)?;
        if let Some((p, q, shared)) = first_violation(&h, t) {
            failures.push(json!({
                "n": n, "t": t, "witness": w,
                "left": p.to_string(), "right": q.to_string(), "shared": shared,
            }));
        } else if let Some(tw) = triviality_witness(&h, t)? {
            failures.push(json!({ "n": n, "t": t, "witness": w, "common_singletons": tw.common }));
        }
    }
    match failures.first() {
        None => Ok(Finding::verified(claim, json!({ "grid": grid }))),
        Some(first) => Ok(Finding::refuted(
            claim,
            first["n"].as_u64().unwrap_or(0) as usize,
            first["t"].as_u64().map(|t| t as usize),
            json!({ "failures": failures }),
        )),
    }
}

/// First ordered pair at which `S_ij` changes the size or breaks the
/// t-intersecting property.
fn split_violation(a: &PartitionFamily, t: usize) -> Result<Option<Value>> {
    let n = a.n();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let (_, image) = family_split(a, i, j)?;
            if image.len() != a.len() || !is_t_intersecting(&image, t) {
                return Ok(Some(json!({
                    "i": i, "j": j, "family": members(a), "image": members(&image),
                })));
            }
        }
    }
    Ok(None)
}

fn split_preserves(cfg: &VerifyConfig) -> Result<Finding> {
    let claim = Claim::SplitPreserves;
    let mut exhaustive = 0usize;
    if cfg.ns(4..=4).contains(&4) && cfg.ts(1..=1).contains(&1) {
        for size in 1..=3 {
            for combo in combinations(15, size) {
                let ranks: Vec<u64> = combo.iter().map(|&k| k as u64 - 1).collect();
                let a = PartitionFamily::from_ranks(4, ranks)?;
                if !is_t_intersecting(&a, 1) {
                    continue;
                }
                exhaustive += 1;
                if let Some(ev) = split_violation(&a, 1)? {
                    return Ok(Finding::refuted(claim, 4, Some(1), ev));
                }
            }
        }
    }
    let mut sampled = Vec::new();
    for n in cfg.ns(5..=6) {
        for t in cfg.ts(1..=2) {
            let mut rng = cfg.rng(claim, n, t);
            for _ in 0..cfg.samples {
                let size = rng.gen_range(1..=24);
                let a = random_intersecting_family(&mut rng, n, t, size)?;
                if let Some(ev) = split_violation(&a, t)? {
                    return Ok(Finding::refuted(claim, n, Some(t), ev));
                }
            }
            sampled.push(json!({ "n": n, "t": t, "families": cfg.samples }));
        }
    }
    if exhaustive == 0 && sampled.is_empty() {
        return Ok(Finding::skipped(claim, "empty grid"));
    }
    Ok(Finding::verified(
        claim,
        json!({ "exhaustive_n4_t1": exhaustive, "sampled": sampled, "seed": cfg.seed }),
    ))
}

fn compression(cfg: &VerifyConfig) -> Result<Finding> {
    let claim = Claim::Compression;
    let mut sampled = Vec::new();
    for n in cfg.ns(3..=6) {
        for t in cfg.ts(1..=2) {
            let mut rng = cfg.rng(claim, n, t);
            for _ in 0..cfg.samples {
                let size = rng.gen_range(1..=24);
                let a = random_intersecting_family(&mut rng, n, t, size)?;
                let rep = compress(&a, t, PairOrder::Lexicographic)?;
                let f = &rep.final_family;
                let problem = if rep.effective_steps() > n * a.len() {
                    Some("too many effective steps")
                } else if f.len() != a.len() {
                    Some("size changed")
                } else if !is_t_intersecting(f, t) {
                    Some("final family not t-intersecting")
                } else if !is_compressed(f)? {
                    Some("final family not compressed")
                } else if !sigma_family(f).is_t_intersecting(t) {
                    Some("singleton sets not t-intersecting")
                } else {
                    None
                };
                if let Some(problem) = problem {
                    return Ok(Finding::refuted(
                        claim,
                        n,
                        Some(t),
                        json!({
                            "problem": problem,
                            "family": members(&a),
                            "final": members(f),
                            "steps": rep.steps,
                        }),
                    ));
                }
            }
            sampled.push(json!({ "n": n, "t": t, "families": cfg.samples }));
        }
    }
    if sampled.is_empty() {
        return Ok(Finding::skipped(claim, "empty grid"));
    }
    Ok(Finding::verified(
        claim,
        json!({ "sampled": sampled, "seed": cfg.seed }),
    ))
}

fn undo_split(cfg: &VerifyConfig) -> Result<Finding> {
    let claim = Claim::UndoSplit;
    let mut checked = Vec::new();
    for t in cfg.ts(1..=2) {
        for n in cfg.ns(t + 3..=7) {
            let w = hm_witness(n, t)?;
            let rep = unsplit_search(n, &w)?;
            if let Some(c) = rep.counterexamples.first() {
                return Ok(Finding::refuted(
                    claim,
                    n,
                    Some(t),
                    json!({ "witness": w, "counterexample": c }),
                ));
            }
            // H itself: whenever the premise holds, the conclusion must too
            let h = construct_hm(n, &w)?;
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    match verify_undo(&h, t, i, j, &w) {
                        Ok(v) if !v.holds => {
                            return Ok(Finding::refuted(
                                claim,
                                n,
                                Some(t),
                                json!({ "witness": w, "i": i, "j": j,
                                        "counterexample": v.counterexample.map(|p| p.to_string()) }),
                            ))
                        }
                        Ok(_) | Err(Error::PremiseNotMet(_)) => {}
                        Err(e) => return Err(e),
                    }
                }
            }
            checked.push(json!({
                "n": n, "t": t, "candidates": rep.candidates, "premise_met": rep.premise_met,
            }));
        }
    }
    if checked.is_empty() {
        return Ok(Finding::skipped(claim, "empty grid"));
    }
    Ok(Finding::verified(claim, json!({ "checked": checked })))
}

/// Result of one asymptotic check at a single `(n, t)`.
struct Point {
    n: usize,
    t: usize,
    holds: bool,
    evidence: Value,
}

fn summarize(claim: Claim, points: Vec<Point>, skipped: Vec<Value>) -> Finding {
    let failing = points
        .iter()
        .filter(|p| !p.holds)
        .max_by_key(|p| (p.n, p.t));
    let (n, t) = failing.map_or((None, None), |p| (Some(p.n), Some(p.t)));
    let points: Vec<Value> = points
        .into_iter()
        .map(|p| json!({ "n": p.n, "t": p.t, "holds": p.holds, "detail": p.evidence }))
        .collect();
    let evidence = json!({ "points": points, "skipped": skipped });
    match (n, points.is_empty()) {
        (Some(n), _) => Finding::refuted(claim, n, t, evidence),
        (None, true) => Finding {
            evidence,
            ..Finding::skipped(claim, "")
        },
        (None, false) => Finding::verified(claim, evidence),
    }
}

fn trivial_bound(cfg: &VerifyConfig) -> Result<Finding> {
    let claim = Claim::TrivialBound;
    let table = build_table(crate::search::SEARCH_LIMIT);
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    for t in cfg.ts(1..=2) {
        for n in cfg.ns(t + 2..=6) {
            let g = build_graph(n, t)?;
            let rep = max_family(&g, Mode::Unrestricted, &cfg.search)?;
            if !rep.optimal {
                skipped.push(json!({ "n": n, "t": t, "reason": "search timed out" }));
                continue;
            }
            let bound = table.bell(n - t)?;
            let optimum = rep.witness.len();
            let mut detail = json!({ "optimum": optimum, "bound": bound });
            let mut holds = bound == optimum as u64;
            if holds {
                let e = enumerate_extremal(&g, Mode::Unrestricted, optimum, &cfg.search)?;
                if !e.complete {
                    skipped.push(json!({ "n": n, "t": t, "reason": "enumeration timed out" }));
                    continue;
                }
                let nontrivial = e
                    .families
                    .iter()
                    .find(|f| matches!(triviality_witness(f, t), Ok(None)));
                detail["extremal_families"] = json!(e.families.len());
                if let Some(f) = nontrivial {
                    holds = false;
                    detail["nontrivial_extremal"] = json!(members(f));
                }
            } else {
                detail["witness"] = json!(members(&rep.witness));
            }
            points.push(Point {
                n,
                t,
                holds,
                evidence: detail,
            });
        }
    }
    Ok(summarize(claim, points, skipped))
}

fn hm_extremal(cfg: &VerifyConfig) -> Result<Finding> {
    let claim = Claim::HmExtremal;
    let table = build_table(crate::search::SEARCH_LIMIT);
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    for t in cfg.ts(1..=2) {
        for n in cfg.ns(t + 3..=6) {
            let g = build_graph(n, t)?;
            let rep = max_family(&g, Mode::Nontrivial, &cfg.search)?;
            if !rep.optimal {
                skipped.push(json!({ "n": n, "t": t, "reason": "search timed out" }));
                continue;
            }
            let bound = table.hm_size(n, t)?;
            let optimum = rep.witness.len();
            let mut detail = json!({ "optimum": optimum, "hm_size": bound });
            let mut holds = bound == optimum as u64;
            if holds {
                let e = enumerate_extremal(&g, Mode::Nontrivial, optimum, &cfg.search)?;
                if !e.complete {
                    skipped.push(json!({ "n": n, "t": t, "reason": "enumeration timed out" }));
                    continue;
                }
                let classes = iso_classes(&e.families)?;
                detail["extremal_families"] = json!(e.families.len());
                detail["isomorphism_classes"] = json!(classes.len());
                for f in &e.families {
                    if recognize_hm(f, t)?.is_none() {
                        holds = false;
                        detail["non_hm_extremal"] = json!(members(f));
                        break;
                    }
                }
            } else {
                detail["witness"] = json!(members(&rep.witness));
            }
            points.push(Point {
                n,
                t,
                holds,
                evidence: detail,
            });
        }
    }
    Ok(summarize(claim, points, skipped))
}

fn lemma_scan(cfg: &VerifyConfig, claim: Claim, lemmas: &[Lemma]) -> Result<Finding> {
    let ns = cfg.ns(1..=40);
    let (Some(&lo), Some(&hi)) = (ns.first(), ns.last()) else {
        return Ok(Finding::skipped(claim, "empty n range"));
    };
    let table: BellTable = build_table(hi);
    let mut points = Vec::new();
    for t in cfg.ts(1..=3) {
        for &lemma in lemmas {
            let scan = threshold_scan(&table, lemma, t, lo..=hi)?;
            let Some(&(last_n, last)) = scan.values.last() else {
                continue;
            };
            points.push(Point {
                n: last_n,
                t,
                holds: last,
                evidence: json!({
                    "lemma": lemma,
                    "persistent_from": scan.persistent_from,
                    "monotone": scan.monotone,
                }),
            });
        }
    }
    Ok(summarize(claim, points, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(claims: Vec<Claim>) -> Vec<Finding> {
        let cfg = VerifyConfig {
            claims,
            samples: 20,
            ..VerifyConfig::default()
        };
        cmd_verify(&cfg).unwrap()
    }

    #[test]
    fn claim_ids_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.id().parse::<Claim>().unwrap(), c);
        }
        assert!("prop".parse::<Claim>().is_err());
    }

    #[test]
    fn counting_claims_verified() {
        for f in quick(vec![Claim::BellIdentities, Claim::HmSize]) {
            assert_eq!(f.status, Status::Verified, "{:?}", f);
        }
    }

    #[test]
    fn count_small() {
        assert_eq!(count_partitions(4).unwrap(), (15, 4));
        assert_eq!(count_partitions(1).unwrap(), (1, 0));
    }

    #[test]
    fn hm_intersecting_fails_at_t_plus_two() {
        let f = &quick(vec![Claim::HmIntersecting])[0];
        assert_eq!(f.status, Status::RefutedAtN);
        // first failure is H(1; 3) at n = 3, which is trivial (both members
        // keep {2}); for t = 2 the first failure is n = 4
        assert_eq!((f.n, f.t), (Some(3), Some(1)));
        let failures = f.evidence["failures"].as_array().unwrap();
        let at: Vec<(u64, u64)> = failures
            .iter()
            .map(|v| (v["n"].as_u64().unwrap(), v["t"].as_u64().unwrap()))
            .collect();
        assert_eq!(at, vec![(3, 1), (4, 2), (5, 3)]);
        assert!(!f.asymptotic);
    }

    #[test]
    fn exit_codes() {
        let v = Finding::verified(Claim::HmSize, Value::Null);
        let a = Finding::refuted(Claim::TrivialBound, 6, Some(2), Value::Null);
        let r = Finding::refuted(Claim::HmSize, 6, Some(2), Value::Null);
        assert_eq!(exit_code(std::slice::from_ref(&v)), 0);
        assert_eq!(exit_code(&[v.clone(), a.clone()]), 2);
        assert_eq!(exit_code(&[v, a, r]), 1);
    }
}
