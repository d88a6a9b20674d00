//! Labeled oriented graphs and their structural queries.
//!
//! An [`OrientedGraph`] is a simple graph on the vertices `0..n` in which
//! every edge carries one direction. Adjacency is kept as one `u64` bitmask
//! per vertex, which caps the order at 64 vertices; every algorithm in this
//! crate is meant for desk-scale inputs far below that.

mod family;
mod sgr;
mod structure;

pub use family::{generate_family, Family, FamilySpec, OrientationRule};
pub use sgr::{parse_sgr, to_sgr};
pub use structure::{
    complete_multipartite_partition, components, even_cycles, forbidden_subgraph_scan,
    four_cycles, girth, pendant_vertices, simple_cycles, unique_cycle, Component, CycleData,
    CycleSign, ForbiddenPattern, ForbiddenScan, Girth,
};

pub(crate) use structure::{component_masks, multipartite_parts};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Iterates the set bits of a mask in increasing order.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OrientedGraph {
    n: usize,
    /// Sorted arc list `(tail, head)`.
    arcs: Vec<(Vertex, Vertex)>,
    adj: Vec<u64>,
    out: Vec<u64>,
}

impl OrientedGraph {
    pub const MAX_ORDER: usize = 64;

    /// Validates and builds an oriented graph from an arc list.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            if g.out[u] & bit(v) != 0 {
                return Err(Error::DuplicateArc(u, v));
            }
            if g.out[v] & bit(u) != 0 {
                return Err(Error::OppositeArc(u, v));
            }
            g.out[u] |= bit(v);
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
        }
        g.rebuild_arcs();
        Ok(g)
    }

    /// The graph on `n` vertices with no arcs.
    pub fn empty(n: usize) -> Result<Self> {
        if n > Self::MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        Ok(Self {
            n,
            arcs: Vec::new(),
            adj: vec![0; n],
            out: vec![0; n],
        })
    }

    /// Builds a graph from out-neighbourhood masks that are already known
    /// to describe an oriented graph.
    pub(crate) fn from_out_masks(out: Vec<u64>) -> Self {
        let n = out.len();
        let mut adj = out.clone();
        for u in 0..n {
            for v in bits(out[u]) {
                adj[v] |= bit(u);
            }
        }
        let mut g = Self {
            n,
            arcs: Vec::new(),
            adj,
            out,
        };
        g.rebuild_arcs();
        debug_assert!((0..n).all(|v| g.out[v] & bit(v) == 0));
        g
    }

    fn rebuild_arcs(&mut self) {
        self.arcs.clear();
        for u in 0..self.n {
            self.arcs.extend(bits(self.out[u]).map(|v| (u, v)));
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of arcs, i.e. edges of the underlying graph.
    pub fn size(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    /// Underlying edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut edges = Vec::with_capacity(self.arcs.len());
        for u in 0..self.n {
            edges.extend(bits(self.adj[u] & !full_mask(u + 1)).map(|v| (u, v)));
        }
        edges
    }

    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    pub fn neighbor_mask(&self, v: Vertex) -> u64 {
        self.adj[v]
    }

    pub fn out_mask(&self, v: Vertex) -> u64 {
        self.out[v]
    }

    pub(crate) fn adjacency_masks(&self) -> &[u64] {
        &self.adj
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> {
        bits(self.adj[v])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u] & bit(v) != 0
    }

    pub fn has_arc(&self, tail: Vertex, head: Vertex) -> bool {
        self.out[tail] & bit(head) != 0
    }

    /// The skew-adjacency entry `s_uv`: `+1` for an arc `u -> v`, `-1` for
    /// `v -> u`, `0` otherwise.
    pub fn sign(&self, u: Vertex, v: Vertex) -> i8 {
        if self.out[u] & bit(v) != 0 {
            1
        } else if self.out[v] & bit(u) != 0 {
            -1
        } else {
            0
        }
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// The subgraph induced by `mask`, relabeled in increasing order of the
    /// original labels. The second component maps new labels back to old.
    pub fn induced_mask(&self, mask: u64) -> (OrientedGraph, Vec<Vertex>) {
        let mask = mask & self.vertex_mask();
        let labels: Vec<Vertex> = bits(mask).collect();
        (self.induced(&labels), labels)
    }

    /// The subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[Vertex]) -> OrientedGraph {
        let mut index = [usize::MAX; 64];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let out = vertices
            .iter()
            .map(|&v| {
                bits(self.out[v])
                    .filter(|&w| index[w] != usize::MAX)
                    .fold(0u64, |acc, w| acc | bit(index[w]))
            })
            .collect();
        OrientedGraph::from_out_masks(out)
    }

    /// Deletes a set of vertices; returns the remainder and its back-map.
    pub fn remove_vertices(&self, removed: &[Vertex]) -> (OrientedGraph, Vec<Vertex>) {
        let drop = removed.iter().fold(0u64, |acc, &v| acc | bit(v));
        self.induced_mask(self.vertex_mask() & !drop)
    }

    /// Every arc reversed. The underlying graph is unchanged.
    pub fn reversed(&self) -> OrientedGraph {
        let mut out = vec![0u64; self.n];
        for &(u, v) in &self.arcs {
            out[v] |= bit(u);
        }
        OrientedGraph::from_out_masks(out)
    }

    /// Reverses the single arc between `u` and `v`.
    pub fn with_reversed_edge(&self, u: Vertex, v: Vertex) -> Result<OrientedGraph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.is_adjacent(u, v) {
            return Err(Error::InvalidParameter(format!("{u} and {v} are not adjacent")));
        }
        let mut out = self.out.clone();
        let (t, h) = if self.has_arc(u, v) { (u, v) } else { (v, u) };
        out[t] &= !bit(h);
        out[h] |= bit(t);
        Ok(OrientedGraph::from_out_masks(out))
    }

    /// Vertices reachable from `start` through vertices of `within`.
    pub(crate) fn reach(&self, start: Vertex, within: u64) -> u64 {
        reach(&self.adj, start, within)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// Connected with exactly `n` edges.
    pub fn is_unicyclic(&self) -> bool {
        self.n >= 3 && self.size() == self.n && self.is_connected()
    }

    /// Connected with exactly `n + 1` edges.
    pub fn is_bicyclic(&self) -> bool {
        self.n >= 4 && self.size() == self.n + 1 && self.is_connected()
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.size() + 1 == self.n && self.is_connected()
    }

    pub fn is_forest(&self) -> bool {
        let mut seen = 0u64;
        let mut components = 0;
        for v in 0..self.n {
            if seen & bit(v) == 0 {
                seen |= self.reach(v, self.vertex_mask());
                components += 1;
            }
        }
        self.size() + components == self.n
    }

    pub fn has_pendant(&self) -> bool {
        self.adj.iter().any(|m| m.count_ones() == 1)
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    pub(crate) fn require_unicyclic(&self) -> Result<()> {
        if self.is_unicyclic() {
            Ok(())
        } else {
            Err(Error::NotUnicyclic {
                n: self.n,
                edges: self.size(),
                connected: self.is_connected(),
            })
        }
    }
}

pub(crate) fn reach(adj: &[u64], start: Vertex, within: u64) -> u64 {
    let mut seen = bit(start);
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= adj[v];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_nonempty_graph() {
        let g = OrientedGraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.arcs(), &[(0, 1)]);
        assert_eq!(g.sign(0, 1), 1);
        assert_eq!(g.sign(1, 0), -1);
    }

    #[test]
    fn validation_errors_are_distinct() {
        assert_eq!(
            OrientedGraph::new(3, [(0, 1), (1, 0)]),
            Err(Error::OppositeArc(1, 0))
        );
        assert_eq!(OrientedGraph::new(3, [(2, 2)]), Err(Error::Loop(2)));
        assert_eq!(
            OrientedGraph::new(3, [(0, 1), (0, 1)]),
            Err(Error::DuplicateArc(0, 1))
        );
        assert_eq!(
            OrientedGraph::new(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(OrientedGraph::empty(65), Err(Error::OrderTooLarge(65)));
    }

    #[test]
    fn uniform_four_cycle() {
        let g = OrientedGraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(g.is_unicyclic());
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert!((0..4).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn induced_subgraph_keeps_orientation() {
        let g = OrientedGraph::new(4, [(0, 1), (2, 1), (2, 3)]).unwrap();
        let (h, labels) = g.induced_mask(0b1110);
        assert_eq!(labels, vec![1, 2, 3]);
        assert_eq!(h.arcs(), &[(1, 0), (1, 2)]);
        let (r, back) = g.remove_vertices(&[1]);
        assert_eq!(back, vec![0, 2, 3]);
        assert_eq!(r.arcs(), &[(1, 2)]);
    }

    #[test]
    fn reversing_an_edge() {
        let g = OrientedGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let h = g.with_reversed_edge(2, 1).unwrap();
        assert_eq!(h.arcs(), &[(0, 1), (2, 1)]);
        assert!(g.with_reversed_edge(0, 2).is_err());
        assert_eq!(g.reversed().arcs(), &[(1, 0), (2, 1)]);
    }
}
