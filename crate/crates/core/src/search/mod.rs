//! Exact maximum t-intersecting families.
//!
//! A family is t-intersecting iff it is a clique of the
//! [`CompatibilityGraph`]. [`max_family`] finds the largest clique, or in
//! [`Mode::Nontrivial`] the largest one whose members share fewer than `t`
//! singletons, then picks the optimum with the lexicographically least rank
//! sequence as witness.
//!
//! Root branches run in parallel, each seeded only with the size of a known
//! feasible family, so node counts and reports do not depend on scheduling.

mod bitset;
mod graph;
mod iso;
mod kernel;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

pub use bitset::Bitset;
pub use graph::{build_graph, CompatibilityGraph, SEARCH_LIMIT};
pub use iso::{canonicalize_family_iso, iso_classes, ISO_LIMIT};

use kernel::{root_tasks, Goal, Kernel, Search};

use crate::counting::{build_table, BigCount};
use crate::error::{Error, Result};
use crate::family::{
    construct_hm, construct_trivial, is_t_intersecting, recognize_hm, triviality_witness,
    HmWitness, PartitionFamily,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Unrestricted,
    Nontrivial,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Mode, String> {
        match s {
            "unrestricted" => Ok(Mode::Unrestricted),
            "nontrivial" => Ok(Mode::Nontrivial),
            other => Err(format!(
                "unknown mode `{}` (unrestricted or nontrivial)",
                other
            )),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Unrestricted => "unrestricted",
            Mode::Nontrivial => "nontrivial",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Wall-clock budget; `None` means unlimited.
    pub timeout: Option<Duration>,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            timeout: Some(Duration::from_secs(300)),
            threads: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// `|H(a_1..a_t, b)|`, defined for `n >= t + 2`.
    pub hm_size: Option<BigCount>,
    /// `B_{n-t}`, the size of a trivial family; defined for `t <= n`.
    pub trivial: Option<BigCount>,
    pub equals_hm: Option<bool>,
    pub equals_trivial: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub n: usize,
    pub t: usize,
    pub mode: Mode,
    pub optimum: BigCount,
    /// False when the budget ran out; `optimum` is then a lower bound.
    pub optimal: bool,
    pub witness: PartitionFamily,
    pub hm_witness: Option<HmWitness>,
    pub bounds: Bounds,
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    n: usize,
    t: usize,
    mode: Mode,
    optimum: &'a BigCount,
    optimal: bool,
    witness: Vec<String>,
    hm_witness: &'a Option<HmWitness>,
    bounds: &'a Bounds,
    nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    ms: Option<u128>,
}

impl SearchReport {
    /// JSON report; wall time is only included on request so that reports
    /// are reproducible byte for byte.
    pub fn to_json(&self, timing: bool) -> String {
        let doc = ReportJson {
            n: self.n,
            t: self.t,
            mode: self.mode,
            optimum: &self.optimum,
            optimal: self.optimal,
            witness: self
                .witness
                .partitions()
                .iter()
                .map(|p| p.to_string())
                .collect(),
            hm_witness: &self.hm_witness,
            bounds: &self.bounds,
            nodes: self.nodes,
            ms: timing.then_some(self.elapsed.as_millis()),
        };
        serde_json::to_string(&doc).expect("report JSON")
    }

    pub fn to_text(&self, timing: bool) -> String {
        let opt = |v: &Option<BigCount>| v.as_ref().map_or("-".to_string(), |b| b.to_string());
        let flag = |v: Option<bool>| v.map_or("-", |b| if b { "yes" } else { "no" });
        let mut out = format!(
            "n={} t={} mode={}\noptimum: {}{}\nbounds: hm_size={} (equal: {}) trivial={} (equal: {})\n",
            self.n,
            self.t,
            self.mode,
            self.optimum,
            if self.optimal { "" } else { " (timed out, best so far)" },
            opt(&self.bounds.hm_size),
            flag(self.bounds.equals_hm),
            opt(&self.bounds.trivial),
            flag(self.bounds.equals_trivial),
        );
        match &self.hm_witness {
            Some(w) => out.push_str(&format!("witness is H({:?}; {})\n", w.anchors, w.pivot)),
            None => out.push_str("witness is not a Hilton-Milner family\n"),
        }
        out.push_str(&format!("nodes: {}\n", self.nodes));
        if timing {
            out.push_str(&format!("ms: {}\n", self.elapsed.as_millis()));
        }
        out.push_str("witness:\n");
        for p in self.witness.partitions() {
            out.push_str(&format!("  {}\n", p));
        }
        out
    }
}

/// Size of a feasible family known without searching: the trivial family
/// in plain mode, the Hilton–Milner family (when it qualifies, which needs
/// `n >= t + 3` except for `t = 1`) otherwise.
fn known_feasible(n: usize, t: usize, mode: Mode) -> Result<usize> {
    Ok(match mode {
        Mode::Unrestricted => {
            if t <= n {
                construct_trivial(n, &(1..=t).collect::<Vec<_>>())?.len()
            } else {
                1
            }
        }
        Mode::Nontrivial => {
            let mut size = 0;
            if n >= t + 2 {
                let h = construct_hm(n, &HmWitness::new((1..=t).collect(), n)?)?;
                if is_t_intersecting(&h, t) && triviality_witness(&h, t)?.is_none() {
                    size = h.len();
                }
            }
            size
        }
    })
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| Error::Range(format!("thread pool: {}", e)))?;
            Ok(pool.install(f))
        }
    }
}

pub fn max_family(
    graph: &CompatibilityGraph,
    mode: Mode,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    let start = Instant::now();
    let deadline = opts.timeout.map(|d| start + d);
    let (n, t) = (graph.n(), graph.t());
    let kernel = Kernel::new(graph, mode == Mode::Nontrivial);
    let lb = known_feasible(n, t, mode)?;
    let threshold = lb.max(1) - 1;

    let (omega, mut nodes, timed_out, fallback) = with_pool(opts.threads, || {
        let tasks = root_tasks(&kernel, threshold);
        let results: Vec<(usize, Vec<usize>, u64, bool)> = tasks
            .par_iter()
            .map(|task| {
                let mut s = Search::new(&kernel, Goal::Maximize, threshold, deadline);
                let mut clique = vec![task.vertex];
                s.expand(&mut clique, task.cand.clone(), task.common);
                (s.best, s.best_clique, s.nodes, s.timed_out)
            })
            .collect();
        let mut omega = 0;
        let mut fallback = Vec::new();
        let mut nodes = 1;
        let mut timed_out = false;
        for (best, clique, k, to) in results {
            nodes += k;
            timed_out |= to;
            if !clique.is_empty() && best > omega {
                omega = best;
                fallback = clique;
            }
        }
        (omega, nodes, timed_out, fallback)
    })?;

    // an interrupted witness phase leaves the optimum proven but the
    // witness arbitrary, which still counts as running out of budget
    let (internal, timed_out) = if timed_out {
        (fallback, true)
    } else {
        let (w, k) = lex_least(&kernel, omega, deadline);
        nodes += k;
        match w {
            Some(w) => (w, false),
            None => (fallback, true),
        }
    };
    let witness = PartitionFamily::from_ranks(
        n,
        internal.iter().map(|&v| kernel.rank_of[v] as u64).collect(),
    )?;
    check_witness(&witness, t, mode);
    let optimum = witness.len();

    let table = build_table(n);
    let hm_size = if n >= t + 2 {
        Some(table.hm_size(n, t)?)
    } else {
        None
    };
    let trivial = if t <= n {
        Some(table.bell(n - t)?)
    } else {
        None
    };
    let bounds = Bounds {
        equals_hm: hm_size.as_ref().map(|h| *h == optimum as u64),
        equals_trivial: trivial.as_ref().map(|b| *b == optimum as u64),
        hm_size,
        trivial,
    };
    let hm_witness = if witness.is_empty() {
        None
    } else {
        recognize_hm(&witness, t)?
    };
    Ok(SearchReport {
        n,
        t,
        mode,
        optimum: BigCount::from(optimum),
        optimal: !timed_out,
        witness,
        hm_witness,
        bounds,
        nodes,
        elapsed: start.elapsed(),
    })
}

/// The witness must hold up under the family-level checks, which share no
/// code with the clique search.
fn check_witness(witness: &PartitionFamily, t: usize, mode: Mode) {
    assert!(
        is_t_intersecting(witness, t),
        "search produced a non-intersecting witness"
    );
    if mode == Mode::Nontrivial && !witness.is_empty() {
        assert!(
            triviality_witness(witness, t).expect("non-empty").is_none(),
            "search produced a trivial witness"
        );
    }
}

/// Lexicographically least (by rank) valid clique of size `omega`, chosen
/// greedily with a feasibility query per candidate vertex.
fn lex_least(k: &Kernel, omega: usize, deadline: Option<Instant>) -> (Option<Vec<usize>>, u64) {
    if omega == 0 {
        return (Some(Vec::new()), 0);
    }
    let mut by_rank: Vec<usize> = (0..k.len()).collect();
    by_rank.sort_by_key(|&v| k.rank_of[v]);
    let mut chosen: Vec<usize> = Vec::new();
    let mut cand = Bitset::full(k.len());
    let mut common = k.full_sigma;
    let mut nodes = 0;
    for (pos, &v) in by_rank.iter().enumerate() {
        if chosen.len() == omega {
            break;
        }
        if !cand.contains(v) {
            continue;
        }
        let mut next = cand.and(&k.adj[v]);
        for &u in &by_rank[..=pos] {
            next.remove(u);
        }
        let next_common = common & k.sigma[v];
        let mut clique = chosen.clone();
        clique.push(v);
        let mut s = Search::new(k, Goal::Reach(omega), 0, deadline);
        s.expand(&mut clique, next.clone(), next_common);
        nodes += s.nodes;
        if s.timed_out {
            return (None, nodes);
        }
        if s.done {
            chosen.push(v);
            cand = next;
            common = next_common;
        }
    }
    assert_eq!(
        chosen.len(),
        omega,
        "optimum not reachable in witness phase"
    );
    (Some(chosen), nodes)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// Every valid clique of the target size, each as a family.
    pub families: Vec<PartitionFamily>,
    /// False when the budget ran out before the enumeration finished.
    pub complete: bool,
    pub nodes: u64,
}

/// Every family of exactly `target` members that is a clique and satisfies
/// the mode constraint, in search order.
pub fn enumerate_extremal(
    graph: &CompatibilityGraph,
    mode: Mode,
    target: usize,
    opts: &SearchOptions,
) -> Result<Enumeration> {
    let deadline = opts.timeout.map(|d| Instant::now() + d);
    let kernel = Kernel::new(graph, mode == Mode::Nontrivial);
    let n = graph.n();
    if target == 0 {
        return Ok(Enumeration {
            families: vec![PartitionFamily::empty(n)?],
            complete: true,
            nodes: 0,
        });
    }
    let (found, nodes, timed_out) = with_pool(opts.threads, || {
        let tasks = root_tasks(&kernel, target - 1);
        let results: Vec<(Vec<Vec<usize>>, u64, bool)> = tasks
            .par_iter()
            .map(|task| {
                let mut s = Search::new(&kernel, Goal::Collect(target), 0, deadline);
                let mut clique = vec![task.vertex];
                s.expand(&mut clique, task.cand.clone(), task.common);
                (s.found, s.nodes, s.timed_out)
            })
            .collect();
        let mut all = Vec::new();
        let mut nodes = 1;
        let mut timed_out = false;
        for (f, k, to) in results {
            all.extend(f);
            nodes += k;
            timed_out |= to;
        }
        (all, nodes, timed_out)
    })?;
    let families = found
        .into_iter()
        .map(|c| {
            PartitionFamily::from_ranks(n, c.iter().map(|&v| kernel.rank_of[v] as u64).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Enumeration {
        families,
        complete: !timed_out,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(n: usize, t: usize, mode: Mode) -> SearchReport {
        max_family(&build_graph(n, t).unwrap(), mode, &SearchOptions::default()).unwrap()
    }

    #[test]
    fn empty_graph_optimum_one() {
        let r = run(2, 1, Mode::Unrestricted);
        assert_eq!(r.optimum, 1);
        assert!(r.optimal);
        assert_eq!(r.witness.ranks(), &[0]);
    }

    #[test]
    fn star_at_three() {
        let r = run(3, 1, Mode::Unrestricted);
        assert_eq!(r.optimum, 2);
        assert_eq!(r.witness.ranks(), &[1, 4]);
    }

    #[test]
    fn nontrivial_infeasible_at_one_point() {
        let r = run(1, 1, Mode::Nontrivial);
        assert_eq!(r.optimum, 0);
        assert!(r.witness.is_empty());
    }

    #[test]
    fn enumerate_no_edges() {
        let g = build_graph(2, 1).unwrap();
        let e = enumerate_extremal(&g, Mode::Unrestricted, 1, &SearchOptions::default()).unwrap();
        assert_eq!(e.families.len(), 2);
        assert!(e.complete);
    }

    #[test]
    fn mode_parse() {
        assert_eq!("nontrivial".parse::<Mode>().unwrap(), Mode::Nontrivial);
        assert!("x".parse::<Mode>().is_err());
    }
}
