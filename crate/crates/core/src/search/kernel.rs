//! Bitset branch-and-bound over the compatibility graph.
//!
//! Vertices are renumbered by descending degree. Plain mode is the usual
//! colour-bounded clique search. In non-trivial mode a node whose running
//! common-singleton set `S` still has `|S| >= t` is not yet a valid answer;
//! any valid extension must contain a vertex missing some element of every
//! t-subset `X ⊆ S`, so the node branches only on those vertices ("killers"
//! of the cheapest `X`) and prunes when there are none.

use std::time::Instant;

use super::bitset::Bitset;
use super::graph::CompatibilityGraph;

pub(crate) struct Kernel {
    pub t: usize,
    pub nontrivial: bool,
    pub adj: Vec<Bitset>,
    pub sigma: Vec<u64>,
    /// `lacks[x]`: vertices in which element `x + 1` is not a singleton.
    pub lacks: Vec<Bitset>,
    pub rank_of: Vec<usize>,
    pub full_sigma: u64,
}

impl Kernel {
    pub fn new(graph: &CompatibilityGraph, nontrivial: bool) -> Kernel {
        let v = graph.vertex_count();
        let n = graph.n();
        let mut order: Vec<usize> = (0..v).collect();
        order.sort_by_key(|&r| (std::cmp::Reverse(graph.degree(r)), r));
        let mut internal = vec![0; v];
        for (i, &r) in order.iter().enumerate() {
            internal[r] = i;
        }
        let adj = order
            .iter()
            .map(|&r| {
                let mut row = Bitset::new(v);
                for s in graph.neighbors(r).iter() {
                    row.insert(internal[s]);
                }
                row
            })
            .collect();
        let sigma: Vec<u64> = order
            .iter()
            .map(|&r| graph.vertex(r).sigma().mask())
            .collect();
        let lacks = (0..n)
            .map(|x| {
                let mut b = Bitset::new(v);
                for (i, &s) in sigma.iter().enumerate() {
                    if s >> x & 1 == 0 {
                        b.insert(i);
                    }
                }
                b
            })
            .collect();
        Kernel {
            t: graph.t(),
            nontrivial,
            adj,
            sigma,
            lacks,
            rank_of: order,
            full_sigma: crate::partition::full_mask(n),
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_valid(&self, common: u64) -> bool {
        !self.nontrivial || (common.count_ones() as usize) < self.t
    }

    /// Greedy sequential colouring. Returns vertices in colour order with
    /// their (non-decreasing) colour numbers.
    pub fn color_sort(&self, cand: &Bitset) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = cand.clone();
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.and_not_assign(&self.adj[v]);
                uncolored.remove(v);
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }

    /// Candidates missing some element of the t-subset of `common` with the
    /// fewest such candidates.
    pub fn killers(&self, cand: &Bitset, common: u64) -> Bitset {
        let mut counts: Vec<(usize, usize)> = crate::partition::mask_elements(common)
            .into_iter()
            .map(|x| (cand.and_count(&self.lacks[x - 1]), x - 1))
            .collect();
        counts.sort_unstable();
        let mut out = Bitset::new(self.len());
        for &(_, x) in counts.iter().take(self.t) {
            out.or_assign(&self.lacks[x]);
        }
        out.and_assign(cand);
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Goal {
    /// Largest valid clique, improving on the starting threshold.
    Maximize,
    /// Stop at the first valid clique of this size.
    Reach(usize),
    /// Collect every valid clique of exactly this size.
    Collect(usize),
}

pub(crate) struct Search<'k> {
    k: &'k Kernel,
    goal: Goal,
    /// A clique must be strictly larger than this to be recorded.
    pub best: usize,
    pub best_clique: Vec<usize>,
    pub found: Vec<Vec<usize>>,
    pub nodes: u64,
    deadline: Option<Instant>,
    pub timed_out: bool,
    pub done: bool,
}

impl<'k> Search<'k> {
    pub fn new(
        k: &'k Kernel,
        goal: Goal,
        threshold: usize,
        deadline: Option<Instant>,
    ) -> Search<'k> {
        let best = match goal {
            Goal::Maximize => threshold,
            Goal::Reach(r) | Goal::Collect(r) => r.saturating_sub(1),
        };
        Search {
            k,
            goal,
            best,
            best_clique: Vec::new(),
            found: Vec::new(),
            nodes: 0,
            deadline,
            timed_out: false,
            done: false,
        }
    }

    fn stopped(&self) -> bool {
        self.done || self.timed_out
    }

    pub fn expand(&mut self, clique: &mut Vec<usize>, mut cand: Bitset, common: u64) {
        self.nodes += 1;
        if self.nodes & 1023 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        if self.stopped() {
            return;
        }
        let k = self.k;
        let valid = k.is_valid(common);
        let len = clique.len();
        match self.goal {
            Goal::Collect(target) => {
                if len == target {
                    if valid {
                        self.found.push(clique.clone());
                    }
                    return;
                }
            }
            Goal::Maximize | Goal::Reach(_) => {
                if valid && len > self.best {
                    self.best = len;
                    self.best_clique = clique.clone();
                    if matches!(self.goal, Goal::Reach(r) if len >= r) {
                        self.done = true;
                        return;
                    }
                }
            }
        }
        if cand.is_empty() {
            return;
        }
        let (order, colors) = k.color_sort(&cand);
        if valid {
            for idx in (0..order.len()).rev() {
                if len + colors[idx] <= self.best {
                    return;
                }
                let v = order[idx];
                self.branch(clique, &cand, common, v);
                cand.remove(v);
                if self.stopped() {
                    return;
                }
            }
        } else {
            if len + colors.last().copied().unwrap_or(0) <= self.best {
                return;
            }
            let killers = k.killers(&cand, common);
            for v in killers.iter() {
                if len + cand.count() <= self.best {
                    return;
                }
                self.branch(clique, &cand, common, v);
                cand.remove(v);
                if self.stopped() {
                    return;
                }
            }
        }
    }

    fn branch(&mut self, clique: &mut Vec<usize>, cand: &Bitset, common: u64, v: usize) {
        clique.push(v);
        let next = cand.and(&self.k.adj[v]);
        self.expand(clique, next, common & self.k.sigma[v]);
        clique.pop();
    }
}

/// One child of the root, searched independently.
pub(crate) struct RootTask {
    pub vertex: usize,
    pub cand: Bitset,
    pub common: u64,
}

/// Children of the root that survive the bound `threshold`, in the order
/// the sequential search would visit them. Each excludes its predecessors.
pub(crate) fn root_tasks(k: &Kernel, threshold: usize) -> Vec<RootTask> {
    let mut cand = Bitset::full(k.len());
    let common = k.full_sigma;
    let mut tasks = Vec::new();
    let mut push = |cand: &mut Bitset, v: usize| {
        tasks.push(RootTask {
            vertex: v,
            cand: cand.and(&k.adj[v]),
            common: common & k.sigma[v],
        });
        cand.remove(v);
    };
    let (order, colors) = k.color_sort(&cand);
    if k.is_valid(common) {
        for idx in (0..order.len()).rev() {
            if colors[idx] <= threshold {
                break;
            }
            push(&mut cand, order[idx]);
        }
    } else if colors.last().copied().unwrap_or(0) > threshold {
        let killers = k.killers(&cand, common);
        for v in killers.iter() {
            push(&mut cand, v);
        }
    }
    tasks
}
