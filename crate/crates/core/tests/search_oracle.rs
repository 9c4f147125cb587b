//! The clique search against oracles that share none of its code: a plain
//! subset scan for tiny n and Bron–Kerbosch maximal cliques beyond that.

use pekr_core::partition::{enumerate_partitions, SetPartition};
use pekr_core::search::{build_graph, enumerate_extremal, max_family, Mode, SearchOptions};

fn blocks_shared(p: &SetPartition, q: &SetPartition) -> usize {
    let (a, b) = (p.to_blocks(), q.to_blocks());
    a.iter().filter(|x| b.contains(x)).count()
}

fn singleton_set(p: &SetPartition) -> u64 {
    p.to_blocks()
        .iter()
        .filter(|b| b.len() == 1)
        .fold(0, |m, b| m | 1 << (b.min() - 1))
}

struct Oracle {
    parts: Vec<SetPartition>,
    adj: Vec<Vec<bool>>,
    sigma: Vec<u64>,
    t: usize,
}

impl Oracle {
    fn new(n: usize, t: usize) -> Oracle {
        let parts: Vec<SetPartition> = enumerate_partitions(n).unwrap().collect();
        let adj = parts
            .iter()
            .map(|p| {
                parts
                    .iter()
                    .map(|q| p != q && blocks_shared(p, q) >= t)
                    .collect()
            })
            .collect();
        let sigma = parts.iter().map(singleton_set).collect();
        Oracle {
            parts,
            adj,
            sigma,
            t,
        }
    }

    fn nontrivial(&self, members: &[usize]) -> bool {
        let common = members.iter().fold(u64::MAX, |m, &v| m & self.sigma[v]);
        (common.count_ones() as usize) < self.t
    }

    /// Largest clique (and largest non-trivial clique) by scanning every
    /// subset of vertices.
    fn subset_scan(&self) -> (usize, usize) {
        let v = self.parts.len();
        assert!(v <= 20);
        let (mut best, mut best_nt) = (0, 0);
        for mask in 1u32..(1 << v) {
            let members: Vec<usize> = (0..v).filter(|&i| mask >> i & 1 == 1).collect();
            let clique = members
                .iter()
                .enumerate()
                .all(|(k, &a)| members[k + 1..].iter().all(|&b| self.adj[a][b]));
            if clique {
                best = best.max(members.len());
                if self.nontrivial(&members) {
                    best_nt = best_nt.max(members.len());
                }
            }
        }
        (best, best_nt)
    }

    /// Every maximal clique. A non-trivial clique stays non-trivial when
    /// extended, so the non-trivial optimum is attained by a maximal one.
    fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let all: Vec<usize> = (0..self.parts.len()).collect();
        self.bk(&mut Vec::new(), all, Vec::new(), &mut out);
        out
    }

    fn bk(&self, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        let pivot = *p
            .iter()
            .chain(&x)
            .max_by_key(|&&u| p.iter().filter(|&&w| self.adj[u][w]).count())
            .unwrap();
        let mut p = p;
        let mut x = x;
        for v in p.clone() {
            if self.adj[pivot][v] {
                continue;
            }
            r.push(v);
            let np = p.iter().copied().filter(|&w| self.adj[v][w]).collect();
            let nx = x.iter().copied().filter(|&w| self.adj[v][w]).collect();
            self.bk(r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }

    fn clique_optima(&self) -> (usize, usize) {
        let cliques = self.maximal_cliques();
        let best = cliques.iter().map(Vec::len).max().unwrap();
        let best_nt = cliques
            .iter()
            .filter(|c| self.nontrivial(c))
            .map(Vec::len)
            .max()
            .unwrap_or(0);
        (best, best_nt)
    }
}

fn search(n: usize, t: usize, mode: Mode) -> usize {
    let g = build_graph(n, t).unwrap();
    let r = max_family(&g, mode, &SearchOptions::default()).unwrap();
    assert!(r.optimal);
    assert_eq!(r.witness.len() as u64, r.optimum.to_u64().unwrap());
    r.witness.len()
}

#[test]
fn subset_scan_agrees_up_to_four_points() {
    for n in 1..=4 {
        for t in 1..=2 {
            let o = Oracle::new(n, t);
            let (best, best_nt) = o.subset_scan();
            assert_eq!(search(n, t, Mode::Unrestricted), best, "n={} t={}", n, t);
            assert_eq!(
                search(n, t, Mode::Nontrivial),
                best_nt,
                "n={} t={} nontrivial",
                n,
                t
            );
        }
    }
}

#[test]
fn maximal_cliques_agree_at_five_and_six() {
    let mut cases = vec![];
    for t in 1..=4 {
        cases.push((5, t));
    }
    for t in 2..=5 {
        cases.push((6, t));
    }
    for (n, t) in cases {
        let o = Oracle::new(n, t);
        let (best, best_nt) = o.clique_optima();
        assert_eq!(search(n, t, Mode::Unrestricted), best, "n={} t={}", n, t);
        assert_eq!(
            search(n, t, Mode::Nontrivial),
            best_nt,
            "n={} t={} nontrivial",
            n,
            t
        );
    }
}

#[test]
fn edges_match_pair_scan() {
    for (n, t) in [(3, 1), (4, 1), (4, 2), (4, 3), (5, 2)] {
        let o = Oracle::new(n, t);
        let g = build_graph(n, t).unwrap();
        for a in 0..o.parts.len() {
            assert_eq!(g.vertex(a), &o.parts[a]);
            for b in 0..o.parts.len() {
                assert_eq!(g.has_edge(a, b), o.adj[a][b], "n={} t={} {} {}", n, t, a, b);
            }
        }
    }
}

#[test]
fn discrete_partition_degree() {
    // partitions sharing >= t blocks with 1|2|...|n are those with >= t
    // singletons (other than the discrete partition itself)
    for n in 2..=5 {
        for t in 1..n {
            let g = build_graph(n, t).unwrap();
            let discrete = g.vertex_count() - 1;
            assert_eq!(g.vertex(discrete), &SetPartition::discrete(n));
            let expected = enumerate_partitions(n)
                .unwrap()
                .filter(|p| p.sigma().len() >= t && p != &SetPartition::discrete(n))
                .count();
            assert_eq!(g.degree(discrete), expected, "n={} t={}", n, t);
        }
    }
}

#[test]
fn witness_is_rank_least_optimum() {
    // the rank-least optimal clique is the lexicographic minimum over the
    // complete list of optimal cliques
    for (n, t, mode) in [
        (4, 1, Mode::Nontrivial),
        (5, 1, Mode::Nontrivial),
        (5, 2, Mode::Unrestricted),
    ] {
        let g = build_graph(n, t).unwrap();
        let r = max_family(&g, mode, &SearchOptions::default()).unwrap();
        let all = enumerate_extremal(&g, mode, r.witness.len(), &SearchOptions::default()).unwrap();
        let least = all
            .families
            .iter()
            .map(|f| f.ranks().to_vec())
            .min()
            .unwrap();
        assert_eq!(r.witness.ranks(), least.as_slice());
    }
}

#[test]
fn enumeration_matches_maximal_cliques() {
    // every optimal clique is maximal, so the oracle can list them too
    for (n, t) in [(4, 1), (4, 2), (5, 1), (5, 2)] {
        let o = Oracle::new(n, t);
        let cliques = o.maximal_cliques();
        for mode in [Mode::Unrestricted, Mode::Nontrivial] {
            let ok = |c: &Vec<usize>| mode == Mode::Unrestricted || o.nontrivial(c);
            let best = cliques
                .iter()
                .filter(|c| ok(c))
                .map(Vec::len)
                .max()
                .unwrap();
            let mut want: Vec<Vec<u64>> = cliques
                .iter()
                .filter(|c| c.len() == best && ok(c))
                .map(|c| {
                    let mut r: Vec<u64> = c.iter().map(|&v| v as u64).collect();
                    r.sort_unstable();
                    r
                })
                .collect();
            want.sort();
            let g = build_graph(n, t).unwrap();
            let e = enumerate_extremal(&g, mode, best, &SearchOptions::default()).unwrap();
            let mut got: Vec<Vec<u64>> = e.families.iter().map(|f| f.ranks().to_vec()).collect();
            got.sort();
            assert_eq!(got, want, "n={} t={} {:?}", n, t, mode);
        }
    }
}
