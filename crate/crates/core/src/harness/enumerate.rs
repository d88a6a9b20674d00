//! Labeled enumeration and seeded sampling of oriented graphs.
//!
//! Underlying graphs are produced with every edge written from the smaller
//! label to the larger; an orientation is a mask whose bit `j` reverses the
//! `j`-th edge in sorted order.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, full_mask, OrientedGraph, Vertex};

/// Largest order for exhaustive sweeps over all underlying graphs.
pub const EXHAUSTIVE_MAX_ORDER: usize = 7;
/// Largest order for exhaustive sweeps restricted to trees, unicyclic or
/// bicyclic graphs, which are enumerated edge set by edge set.
pub const SPARSE_EXHAUSTIVE_MAX_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Connectivity {
    Any,
    Connected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphClass {
    Any,
    Tree,
    /// Connected with exactly one cycle.
    Unicyclic,
    /// Connected with `n + 1` edges.
    Bicyclic,
    HasPendant,
}

impl GraphClass {
    /// Whether the class forces connectivity.
    pub fn is_connected_class(self) -> bool {
        matches!(self, Self::Tree | Self::Unicyclic | Self::Bicyclic)
    }

    fn is_sparse(self) -> bool {
        self.is_connected_class()
    }

    /// Number of edges forced by the class on `n` vertices.
    fn edge_count(self, n: usize) -> Option<usize> {
        match self {
            Self::Tree => Some(n.saturating_sub(1)),
            Self::Unicyclic => Some(n),
            Self::Bicyclic => Some(n + 1),
            _ => None,
        }
    }

    pub fn admits(self, g: &OrientedGraph) -> bool {
        match self {
            Self::Any => true,
            Self::Tree => g.is_tree(),
            Self::Unicyclic => g.is_unicyclic(),
            Self::Bicyclic => g.is_bicyclic() && g.is_connected(),
            Self::HasPendant => g.has_pendant(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum OrientationPolicy {
    /// Every orientation of every underlying graph.
    All,
    /// `count` independent random instances per order, drawn by rejection.
    Sample { count: usize, seed: u64 },
    /// Every underlying graph, each with `count` random orientations (or
    /// all of them when there are at most `count`).
    PerUnderlying { count: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumFilter {
    pub connectivity: Connectivity,
    pub class: GraphClass,
    pub min_n: usize,
    pub max_n: usize,
    pub orientations: OrientationPolicy,
}

impl EnumFilter {
    /// All orientations of all graphs with `min_n <= n <= max_n`.
    pub fn exhaustive(min_n: usize, max_n: usize) -> Self {
        Self {
            connectivity: Connectivity::Any,
            class: GraphClass::Any,
            min_n,
            max_n,
            orientations: OrientationPolicy::All,
        }
    }

    pub fn connected(mut self) -> Self {
        self.connectivity = Connectivity::Connected;
        self
    }

    pub fn with_class(mut self, class: GraphClass) -> Self {
        self.class = class;
        self
    }

    pub fn sampled(mut self, count: usize, seed: u64) -> Self {
        self.orientations = OrientationPolicy::Sample { count, seed };
        self
    }

    pub fn per_underlying(mut self, count: usize, seed: u64) -> Self {
        self.orientations = OrientationPolicy::PerUnderlying { count, seed };
        self
    }

    pub fn needs_connected(&self) -> bool {
        self.connectivity == Connectivity::Connected || self.class.is_connected_class()
    }

    pub fn admits(&self, g: &OrientedGraph) -> bool {
        (!self.needs_connected() || g.is_connected()) && self.class.admits(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_n > self.max_n {
            return Err(Error::InvalidParameter(format!(
                "empty order range {}..={}",
                self.min_n, self.max_n
            )));
        }
        if self.max_n > OrientedGraph::MAX_ORDER {
            return Err(Error::OrderTooLarge(self.max_n));
        }
        match self.orientations {
            OrientationPolicy::Sample { count: 0, .. }
            | OrientationPolicy::PerUnderlying { count: 0, .. } => {
                Err(Error::InvalidParameter("sample count must be positive".into()))
            }
            _ => Ok(()),
        }
    }

    /// Largest order whose underlying graphs can be listed exhaustively.
    pub fn underlying_bound(&self) -> usize {
        if self.class.is_sparse() {
            SPARSE_EXHAUSTIVE_MAX_ORDER
        } else {
            EXHAUSTIVE_MAX_ORDER
        }
    }
}

/// Per-order generator, so that each order draws an independent stream.
pub(crate) fn order_rng(seed: u64, n: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> OrientedGraph {
    let mut out = vec![0u64; n];
    for (u, v) in edges {
        out[u] |= bit(v);
    }
    OrientedGraph::from_out_masks(out)
}

/// Decodes a Prüfer sequence into the edges of a labeled tree.
fn prufer_edges(n: usize, seq: &[usize]) -> Vec<(Vertex, Vertex)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<_> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Every labeled tree on `n` vertices, by Prüfer sequence.
fn labeled_trees(n: usize) -> Vec<OrientedGraph> {
    match n {
        0 => return Vec::new(),
        1 => return vec![OrientedGraph::empty(1).expect("order 1")],
        2 => return vec![from_edges(2, [(0, 1)])],
        _ => {}
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut seq = vec![0usize; len];
    for mut code in 0..total {
        for s in seq.iter_mut().rev() {
            *s = code % n;
            code /= n;
        }
        out.push(from_edges(n, prufer_edges(n, &seq)));
    }
    out
}

/// Calls `f` on every `k`-subset of `0..m`, in lexicographic order.
fn for_each_combination(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + m - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every labeled underlying graph on `n` vertices admitted by the
/// connectivity and class constraints, in a fixed order.
pub fn underlying_graphs(
    n: usize,
    connectivity: Connectivity,
    class: GraphClass,
) -> Result<Vec<OrientedGraph>> {
    let probe = EnumFilter {
        connectivity,
        class,
        min_n: n,
        max_n: n,
        orientations: OrientationPolicy::All,
    };
    let bound = probe.underlying_bound();
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    if class == GraphClass::Tree {
        return Ok(labeled_trees(n));
    }
    let all = pairs(n);
    let mut out = Vec::new();
    match class.edge_count(n) {
        Some(k) => for_each_combination(all.len(), k, |idx| {
            let g = from_edges(n, idx.iter().map(|&i| all[i]));
            if probe.admits(&g) {
                out.push(g);
            }
        }),
        None => {
            for mask in 0u64..1 << all.len() {
                let g = from_edges(
                    n,
                    (0..all.len()).filter(|&i| mask >> i & 1 == 1).map(|i| all[i]),
                );
                if probe.admits(&g) {
                    out.push(g);
                }
            }
        }
    }
    Ok(out)
}

/// The orientation of `underlying` selected by `mask`: bit `j` reverses the
/// `j`-th sorted edge from its `smaller -> larger` direction.
pub fn orientation(underlying: &OrientedGraph, mask: u64) -> OrientedGraph {
    let mut out = vec![0u64; underlying.order()];
    for (j, (u, v)) in underlying.edges().into_iter().enumerate() {
        if mask >> j & 1 == 1 {
            out[v] |= bit(u);
        } else {
            out[u] |= bit(v);
        }
    }
    OrientedGraph::from_out_masks(out)
}

/// All `2^m` orientations of the underlying graph of `underlying`.
pub fn orientations_of(underlying: &OrientedGraph) -> impl Iterator<Item = OrientedGraph> + '_ {
    let m = underlying.size();
    assert!(m < 64, "too many edges to enumerate orientations");
    (0u64..1 << m).map(move |mask| orientation(underlying, mask))
}

/// A uniformly random orientation of the underlying graph.
pub fn random_orientation(underlying: &OrientedGraph, rng: &mut impl Rng) -> OrientedGraph {
    let m = underlying.size();
    let mask = rng.gen::<u64>() & full_mask(m);
    orientation(underlying, mask)
}

/// Orientation masks to use for one underlying graph under `policy`.
pub(crate) fn orientation_masks(m: usize, policy: OrientationPolicy, rng: &mut impl Rng) -> Vec<u64> {
    match policy {
        OrientationPolicy::PerUnderlying { count, .. } if m >= 63 || (1u64 << m) > count as u64 => {
            (0..count).map(|_| rng.gen::<u64>() & full_mask(m)).collect()
        }
        _ => (0..1u64 << m).collect(),
    }
}

/// One random underlying graph of the class on `n` vertices, or `None`
/// if the draw was rejected.
fn draw_underlying(n: usize, filter: &EnumFilter, rng: &mut ChaCha8Rng) -> Option<OrientedGraph> {
    let g = match filter.class {
        GraphClass::Tree => {
            if n <= 2 {
                return labeled_trees(n).pop();
            }
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            from_edges(n, prufer_edges(n, &seq))
        }
        GraphClass::Unicyclic | GraphClass::Bicyclic => {
            let all = pairs(n);
            let k = filter.class.edge_count(n)?;
            if k > all.len() {
                return None;
            }
            from_edges(n, all.choose_multiple(rng, k).copied())
        }
        GraphClass::Any | GraphClass::HasPendant => {
            // Uniform over labeled oriented graphs: each pair is absent or
            // carries one of its two arcs with probability 1/3 each.
            let mut out = vec![0u64; n];
            for (u, v) in pairs(n) {
                match rng.gen_range(0..3) {
                    1 => out[u] |= bit(v),
                    2 => out[v] |= bit(u),
                    _ => {}
                }
            }
            return Some(OrientedGraph::from_out_masks(out)).filter(|g| filter.admits(g));
        }
    };
    filter
        .admits(&g)
        .then(|| random_orientation(&g, rng))
}

/// `count` random instances on `n` vertices passing `filter`.
pub(crate) fn sample_order(
    n: usize,
    count: usize,
    seed: u64,
    filter: &EnumFilter,
) -> Result<Vec<OrientedGraph>> {
    let mut rng = order_rng(seed, n);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0u64;
    let cap = 10_000 * count as u64 + 1_000_000;
    while out.len() < count {
        attempts += 1;
        if attempts > cap {
            return Err(Error::InvalidParameter(format!(
                "no graph of order {n} passes the filter"
            )));
        }
        if let Some(g) = draw_underlying(n, filter, &mut rng) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Every labeled oriented graph on `n` vertices passing `filter`, in a
/// deterministic order. Exhaustive mode is limited to small orders.
pub fn enumerate_oriented(n: usize, filter: &EnumFilter) -> Result<Vec<OrientedGraph>> {
    filter.validate()?;
    match filter.orientations {
        OrientationPolicy::Sample { count, seed } => sample_order(n, count, seed, filter),
        policy => {
            let seed = match policy {
                OrientationPolicy::PerUnderlying { seed, .. } => seed,
                _ => 0,
            };
            let mut rng = order_rng(seed, n);
            let mut out = Vec::new();
            for g in underlying_graphs(n, filter.connectivity, filter.class)? {
                for mask in orientation_masks(g.size(), policy, &mut rng) {
                    out.push(orientation(&g, mask));
                }
            }
            Ok(out)
        }
    }
}
