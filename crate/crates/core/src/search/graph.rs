use rayon::prelude::*;

use super::bitset::Bitset;
use crate::error::{Error, Result};
use crate::family::shared_blocks;
use crate::partition::{enumerate_partitions, SetPartition};

/// Largest `n` accepted by [`build_graph`] (`B_8 = 4140` vertices).
pub const SEARCH_LIMIT: usize = 8;

/// All partitions of `[n]` (vertex `k` is the partition of rank `k`), with an
/// edge between two partitions iff they share at least `t` blocks.
/// Cliques are exactly the t-intersecting families.
#[derive(Clone, Debug)]
pub struct CompatibilityGraph {
    n: usize,
    t: usize,
    vertices: Vec<SetPartition>,
    adjacency: Vec<Bitset>,
}

pub fn build_graph(n: usize, t: usize) -> Result<CompatibilityGraph> {
    if n == 0 || n > SEARCH_LIMIT {
        return Err(Error::Limit {
            what: "compatibility graph",
            n,
            max: SEARCH_LIMIT,
        });
    }
    if t == 0 {
        return Err(Error::Range("t must be positive".into()));
    }
    let vertices: Vec<SetPartition> = enumerate_partitions(n)?.collect();
    let masks: Vec<Vec<u64>> = vertices
        .iter()
        .map(|p| {
            let mut m = p.block_masks();
            m.sort_unstable();
            m
        })
        .collect();
    let v = vertices.len();
    let adjacency = (0..v)
        .into_par_iter()
        .map(|a| {
            let mut row = Bitset::new(v);
            for b in 0..v {
                if a != b && shared_blocks(&masks[a], &masks[b]) >= t {
                    row.insert(b);
                }
            }
            row
        })
        .collect();
    Ok(CompatibilityGraph {
        n,
        t,
        vertices,
        adjacency,
    })
}

impl CompatibilityGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// The partition of rank `v`.
    pub fn vertex(&self, v: usize) -> &SetPartition {
        &self.vertices[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Bitset::count).sum::<usize>() / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_no_edges() {
        let g = build_graph(2, 1).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn three_points_is_a_star() {
        let g = build_graph(3, 1).unwrap();
        assert_eq!(g.vertex_count(), 5);
        // hand count over all 10 pairs: only the discrete partition 1|2|3
        // (rank 4) shares a block with 1,2|3, 1,3|2 and 1|2,3
        let mut edges = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                if g.has_edge(a, b) {
                    edges.push((a, b));
                }
            }
        }
        assert_eq!(edges, vec![(1, 4), (2, 4), (3, 4)]);
    }

    #[test]
    fn symmetric_loop_free() {
        let g = build_graph(5, 2).unwrap();
        for a in 0..g.vertex_count() {
            assert!(!g.has_edge(a, a));
            for b in g.neighbors(a).iter() {
                assert!(g.has_edge(b, a));
            }
        }
    }

    #[test]
    fn limits() {
        assert!(matches!(build_graph(9, 1), Err(Error::Limit { .. })));
        assert!(build_graph(3, 0).is_err());
    }
}
