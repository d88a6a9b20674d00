use serde::Serialize;

use super::{bit, bits, full_mask, OrientedGraph, Vertex};
use crate::error::{Error, Result};

/// Orientation sign of a cycle. Only even cycles carry a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleSign {
    /// Evenly-oriented even cycle.
    Positive,
    /// Oddly-oriented even cycle.
    Negative,
    /// Odd cycle.
    Undefined,
}

/// A cycle of the underlying graph, stored in canonical form: the smallest
/// label first and the smaller of its two neighbours second.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CycleData {
    vertices: Vec<Vertex>,
    sign: CycleSign,
}

impl CycleData {
    /// Builds the cycle visiting `vertices` in order (closing back to the
    /// first vertex). Fails unless consecutive vertices are adjacent and the
    /// vertices are distinct.
    pub fn from_sequence(g: &OrientedGraph, vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidParameter("a cycle needs at least 3 vertices".into()));
        }
        let mut seen = 0u64;
        for &v in &vertices {
            g.check_vertex(v)?;
            if seen & bit(v) != 0 {
                return Err(Error::InvalidParameter(format!("vertex {v} repeats in cycle")));
            }
            seen |= bit(v);
        }
        let k = vertices.len();
        for i in 0..k {
            let (u, v) = (vertices[i], vertices[(i + 1) % k]);
            if !g.is_adjacent(u, v) {
                return Err(Error::InvalidParameter(format!("{u} and {v} are not adjacent")));
            }
        }
        Ok(Self::from_sequence_unchecked(g, vertices))
    }

    pub(crate) fn from_sequence_unchecked(g: &OrientedGraph, mut vertices: Vec<Vertex>) -> Self {
        let k = vertices.len();
        let start = (0..k).min_by_key(|&i| vertices[i]).unwrap_or(0);
        vertices.rotate_left(start);
        if k > 2 && vertices[1] > vertices[k - 1] {
            vertices[1..].reverse();
        }
        let sign = if k % 2 == 1 {
            CycleSign::Undefined
        } else {
            let negatives = (0..k)
                .filter(|&i| g.sign(vertices[i], vertices[(i + 1) % k]) < 0)
                .count();
            if negatives % 2 == 0 {
                CycleSign::Positive
            } else {
                CycleSign::Negative
            }
        };
        Self { vertices, sign }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn sign(&self) -> CycleSign {
        self.sign
    }

    pub fn is_evenly_oriented(&self) -> bool {
        self.sign == CycleSign::Positive
    }

    pub fn is_oddly_oriented(&self) -> bool {
        self.sign == CycleSign::Negative
    }

    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &v| m | bit(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub graph: OrientedGraph,
    /// `vertices[i]` is the original label of vertex `i` of `graph`.
    pub vertices: Vec<Vertex>,
}

/// Connected components of the underlying graph, ordered by smallest label.
pub fn components(g: &OrientedGraph) -> Vec<Component> {
    component_masks(g)
        .into_iter()
        .map(|m| {
            let (graph, vertices) = g.induced_mask(m);
            Component { graph, vertices }
        })
        .collect()
}

pub(crate) fn component_masks(g: &OrientedGraph) -> Vec<u64> {
    let all = g.vertex_mask();
    let mut seen = 0u64;
    let mut masks = Vec::new();
    for v in 0..g.order() {
        if seen & bit(v) == 0 {
            let c = g.reach(v, all);
            seen |= c;
            masks.push(c);
        }
    }
    masks
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Girth {
    Acyclic,
    Length(usize),
}

impl Girth {
    pub fn length(self) -> Option<usize> {
        match self {
            Girth::Acyclic => None,
            Girth::Length(k) => Some(k),
        }
    }
}

/// Length of a shortest cycle of the underlying graph.
pub fn girth(g: &OrientedGraph) -> Girth {
    let n = g.order();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = Vec::with_capacity(n);
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        queue.clear();
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.push(root);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Acyclic
    } else {
        Girth::Length(best)
    }
}

/// The cycle of a connected unicyclic graph.
pub fn unique_cycle(g: &OrientedGraph) -> Result<CycleData> {
    g.require_unicyclic()?;
    let adj = g.adjacency_masks();
    // Peel leaves until only the cycle is left.
    let mut alive = g.vertex_mask();
    loop {
        let leaves = bits(alive)
            .filter(|&v| (adj[v] & alive).count_ones() <= 1)
            .fold(0u64, |m, v| m | bit(v));
        if leaves == 0 {
            break;
        }
        alive &= !leaves;
    }
    let start = alive.trailing_zeros() as usize;
    let mut seq = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = bits(adj[cur] & alive)
            .find(|&w| w != prev)
            .expect("cycle vertices have two cycle neighbours");
        if next == start {
            break;
        }
        seq.push(next);
        prev = cur;
        cur = next;
    }
    Ok(CycleData::from_sequence_unchecked(g, seq))
}

/// Every simple cycle of the underlying graph, each reported once.
pub fn simple_cycles(g: &OrientedGraph) -> Vec<CycleData> {
    let mut out = Vec::new();
    for_each_cycle(g, g.vertex_mask(), &mut |seq| {
        out.push(CycleData::from_sequence_unchecked(g, seq.to_vec()))
    });
    out
}

/// Every simple cycle of even length.
pub fn even_cycles(g: &OrientedGraph) -> Vec<CycleData> {
    let mut out = Vec::new();
    for_each_cycle(g, g.vertex_mask(), &mut |seq| {
        if seq.len() % 2 == 0 {
            out.push(CycleData::from_sequence_unchecked(g, seq.to_vec()))
        }
    });
    out
}

/// Calls `f` once per simple cycle inside `within`, with the smallest vertex
/// first and the second vertex smaller than the last.
pub(crate) fn for_each_cycle(g: &OrientedGraph, within: u64, f: &mut impl FnMut(&[Vertex])) {
    let adj = g.adjacency_masks();
    let mut path = Vec::with_capacity(g.order());
    for s in bits(within) {
        let allowed = within & !full_mask(s + 1);
        path.clear();
        path.push(s);
        extend_cycle(adj, s, allowed, bit(s), &mut path, f);
    }
}

fn extend_cycle(
    adj: &[u64],
    start: Vertex,
    allowed: u64,
    used: u64,
    path: &mut Vec<Vertex>,
    f: &mut impl FnMut(&[Vertex]),
) {
    let cur = *path.last().unwrap();
    if path.len() >= 3 && adj[cur] & bit(start) != 0 && path[1] < cur {
        f(path);
    }
    for w in bits(adj[cur] & allowed & !used) {
        path.push(w);
        extend_cycle(adj, start, allowed, used | bit(w), path, f);
        path.pop();
    }
}

/// Every 4-vertex cycle of the underlying graph, found by brute force over
/// 4-subsets.
pub fn four_cycles(g: &OrientedGraph) -> Vec<CycleData> {
    let n = g.order();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    // The three distinct cyclic orders of {a, b, c, d}.
                    for [w, x, y, z] in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                        if g.is_adjacent(w, x)
                            && g.is_adjacent(x, y)
                            && g.is_adjacent(y, z)
                            && g.is_adjacent(z, w)
                        {
                            out.push(CycleData::from_sequence_unchecked(g, vec![w, x, y, z]));
                        }
                    }
                }
            }
        }
    }
    out
}

/// All degree-1 vertices with their unique neighbours.
pub fn pendant_vertices(g: &OrientedGraph) -> Vec<(Vertex, Vertex)> {
    (0..g.order())
        .filter(|&v| g.degree(v) == 1)
        .map(|v| (v, g.neighbor_mask(v).trailing_zeros() as usize))
        .collect()
}

/// The part structure of a complete multipartite underlying graph.
///
/// Parts are the components of the complement; the graph is complete
/// multipartite exactly when each of them is independent in `g`. Returns
/// `Ok(None)` when the graph is not complete multipartite.
pub fn complete_multipartite_partition(g: &OrientedGraph) -> Result<Option<Vec<Vec<Vertex>>>> {
    g.require_connected()?;
    Ok(multipartite_parts(g.adjacency_masks(), g.vertex_mask()).map(|parts| {
        parts.into_iter().map(|m| bits(m).collect()).collect()
    }))
}

/// Complement-component partition of the subgraph induced by `within`, as
/// masks, when that subgraph is complete multipartite.
pub(crate) fn multipartite_parts(adj: &[u64], within: u64) -> Option<Vec<u64>> {
    let mut co_adj = [0u64; 64];
    for v in bits(within) {
        co_adj[v] = within & !adj[v] & !bit(v);
    }
    let mut seen = 0u64;
    let mut parts = Vec::new();
    for v in bits(within) {
        if seen & bit(v) == 0 {
            let part = super::reach(&co_adj, v, within);
            if bits(part).any(|u| adj[u] & part != 0) {
                return None;
            }
            seen |= part;
            parts.push(part);
        }
    }
    Some(parts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ForbiddenPattern {
    /// Induced path on four vertices.
    P4,
    /// Triangle with a pendant edge.
    G1,
    /// Two disjoint edges.
    TwoP2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ForbiddenScan {
    Clean,
    Witness {
        pattern: ForbiddenPattern,
        vertices: [Vertex; 4],
    },
}

/// Searches for an induced `P4`, `G1` or `2·P2`; the first 4-subset in
/// lexicographic order that induces one is returned.
pub fn forbidden_subgraph_scan(g: &OrientedGraph) -> Result<ForbiddenScan> {
    g.require_connected()?;
    let n = g.order();
    let adj = g.adjacency_masks();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let quad = [a, b, c, d];
                    let mask = bit(a) | bit(b) | bit(c) | bit(d);
                    let mut degs = quad.map(|v| (adj[v] & mask).count_ones());
                    degs.sort_unstable();
                    let edges = degs.iter().sum::<u32>() / 2;
                    let pattern = match (edges, degs) {
                        (3, [1, 1, 2, 2]) => Some(ForbiddenPattern::P4),
                        (4, [1, 2, 2, 3]) => Some(ForbiddenPattern::G1),
                        (2, [1, 1, 1, 1]) => Some(ForbiddenPattern::TwoP2),
                        _ => None,
                    };
                    if let Some(pattern) = pattern {
                        return Ok(ForbiddenScan::Witness {
                            pattern,
                            vertices: quad,
                        });
                    }
                }
            }
        }
    }
    Ok(ForbiddenScan::Clean)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family, FamilySpec, OrientationRule};

    fn family(f: Family) -> OrientedGraph {
        generate_family(&FamilySpec::new(f, OrientationRule::UniformCyclic)).unwrap()
    }

    fn kmp(parts: &[usize]) -> OrientedGraph {
        family(Family::CompleteMultipartite {
            parts: parts.to_vec(),
        })
    }

    #[test]
    fn component_examples() {
        let g = OrientedGraph::new(3, [(0, 1)]).unwrap();
        let sizes: Vec<_> = components(&g).iter().map(|c| c.vertices.len()).collect();
        assert_eq!(sizes, vec![2, 1]);
        assert_eq!(components(&family(Family::Cycle { n: 5 })).len(), 1);
        let e = OrientedGraph::empty(3).unwrap();
        assert!(components(&e).iter().all(|c| c.graph.order() == 1));
        assert_eq!(components(&e).len(), 3);
    }

    #[test]
    fn component_back_maps() {
        let g = OrientedGraph::new(5, [(3, 1), (4, 0)]).unwrap();
        let comps = components(&g);
        assert_eq!(comps[0].vertices, vec![0, 4]);
        assert_eq!(comps[0].graph.arcs(), &[(1, 0)]);
        assert_eq!(comps[1].vertices, vec![1, 3]);
        assert_eq!(comps[1].graph.arcs(), &[(1, 0)]);
        assert_eq!(comps[2].vertices, vec![2]);
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&family(Family::Path { n: 6 })), Girth::Acyclic);
        assert_eq!(girth(&family(Family::Star { n: 5 })), Girth::Acyclic);
        assert_eq!(girth(&family(Family::Hnk { n: 7, k: 4 })), Girth::Length(4));
        assert_eq!(girth(&kmp(&[1, 1, 1, 1])), Girth::Length(3));
        assert_eq!(girth(&family(Family::Cycle { n: 9 })), Girth::Length(9));
        assert_eq!(girth(&kmp(&[3, 3])), Girth::Length(4));
    }

    #[test]
    fn unique_cycle_signs() {
        let c4 = OrientedGraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let cyc = unique_cycle(&c4).unwrap();
        assert_eq!(cyc.len(), 4);
        assert_eq!(cyc.sign(), CycleSign::Positive);

        let flipped = c4.with_reversed_edge(0, 1).unwrap();
        assert_eq!(unique_cycle(&flipped).unwrap().sign(), CycleSign::Negative);

        let c3 = OrientedGraph::new(3, [(0, 1), (2, 1), (2, 0)]).unwrap();
        let cyc = unique_cycle(&c3).unwrap();
        assert_eq!(cyc.len(), 3);
        assert_eq!(cyc.sign(), CycleSign::Undefined);
    }

    #[test]
    fn unique_cycle_in_larger_graph() {
        let h = family(Family::Hnk { n: 7, k: 4 });
        let cyc = unique_cycle(&h).unwrap();
        assert_eq!(cyc.vertices(), &[0, 1, 2, 3]);
        let u = family(Family::UStar { n: 8, k: 5 });
        assert_eq!(unique_cycle(&u).unwrap().vertices(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn unique_cycle_rejects_other_graphs() {
        assert!(matches!(
            unique_cycle(&family(Family::Path { n: 4 })),
            Err(Error::NotUnicyclic { .. })
        ));
        let two = OrientedGraph::new(
            7,
            [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (6, 0)],
        )
        .unwrap();
        assert!(matches!(
            unique_cycle(&two),
            Err(Error::NotUnicyclic { connected: false, .. })
        ));
    }

    #[test]
    fn cycle_sequence_is_canonical() {
        let c = family(Family::Cycle { n: 6 });
        let a = CycleData::from_sequence(&c, vec![3, 2, 1, 0, 5, 4]).unwrap();
        let b = CycleData::from_sequence(&c, vec![0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(a, b);
        assert!(CycleData::from_sequence(&c, vec![0, 2, 1]).is_err());
    }

    #[test]
    fn four_cycle_counts() {
        assert_eq!(four_cycles(&kmp(&[2, 2])).len(), 1);
        assert_eq!(four_cycles(&kmp(&[2, 3])).len(), 3);
        assert!(four_cycles(&family(Family::Path { n: 7 })).is_empty());
        assert_eq!(four_cycles(&kmp(&[1, 1, 1, 1])).len(), 3);
        assert_eq!(four_cycles(&family(Family::K112)).len(), 1);
    }

    #[test]
    fn four_cycles_match_cycle_enumeration() {
        for parts in [&[2, 3][..], &[3, 3], &[1, 2, 2], &[2, 2, 2]] {
            let g = kmp(parts);
            let mut brute = four_cycles(&g);
            let mut dfs: Vec<_> = simple_cycles(&g).into_iter().filter(|c| c.len() == 4).collect();
            brute.sort_by(|a, b| a.vertices().cmp(b.vertices()));
            dfs.sort_by(|a, b| a.vertices().cmp(b.vertices()));
            assert_eq!(brute, dfs);
        }
    }

    #[test]
    fn pendant_examples() {
        assert_eq!(pendant_vertices(&family(Family::Path { n: 4 })), vec![(0, 1), (3, 2)]);
        assert!(pendant_vertices(&family(Family::Cycle { n: 5 })).is_empty());
        assert_eq!(
            pendant_vertices(&family(Family::Star { n: 5 })),
            vec![(1, 0), (2, 0), (3, 0), (4, 0)]
        );
    }

    #[test]
    fn multipartite_examples() {
        let sizes = |g: &OrientedGraph| {
            let mut s: Vec<_> = complete_multipartite_partition(g)
                .unwrap()
                .unwrap()
                .iter()
                .map(Vec::len)
                .collect();
            s.sort();
            s
        };
        assert_eq!(sizes(&kmp(&[2, 3])), vec![2, 3]);
        assert_eq!(sizes(&family(Family::K112)), vec![1, 1, 2]);
        assert_eq!(
            complete_multipartite_partition(&family(Family::Path { n: 4 })).unwrap(),
            None
        );
        assert_eq!(
            complete_multipartite_partition(&OrientedGraph::empty(2).unwrap()),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn forbidden_scan_examples() {
        assert!(matches!(
            forbidden_subgraph_scan(&family(Family::Path { n: 4 })).unwrap(),
            ForbiddenScan::Witness { pattern: ForbiddenPattern::P4, .. }
        ));
        assert!(matches!(
            forbidden_subgraph_scan(&family(Family::G1)).unwrap(),
            ForbiddenScan::Witness { pattern: ForbiddenPattern::G1, .. }
        ));
        assert_eq!(forbidden_subgraph_scan(&kmp(&[3, 3])).unwrap(), ForbiddenScan::Clean);
        // C6 contains two disjoint edges at distance two.
        let c6 = family(Family::Cycle { n: 6 });
        assert!(matches!(
            forbidden_subgraph_scan(&c6).unwrap(),
            ForbiddenScan::Witness { .. }
        ));
    }
}
