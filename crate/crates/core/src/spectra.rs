//! Characteristic-polynomial coefficients from basic oriented subgraphs.
//!
//! A basic subgraph is a vertex-disjoint union of single edges and even
//! cycles. Each one on `i` vertices with `c` even cycles, `c_plus` of them
//! evenly-oriented, contributes `(-1)^c_plus * 2^c` to `a_i`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::graph::{bit, bits, even_cycles, full_mask, unique_cycle, CycleData, OrientedGraph, Vertex};
use crate::linalg::serialize_bigint;
use crate::matching::{beta_mask, matching_counts_mask};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicSubgraph {
    pub edges: Vec<(Vertex, Vertex)>,
    pub cycles: Vec<CycleData>,
}

impl BasicSubgraph {
    pub fn c(&self) -> usize {
        self.cycles.len()
    }

    pub fn c_plus(&self) -> usize {
        self.cycles.iter().filter(|c| c.is_evenly_oriented()).count()
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.edges.len() + self.cycles.iter().map(CycleData::len).sum::<usize>()
    }

    /// `(-1)^c_plus * 2^c`.
    pub fn contribution(&self) -> i64 {
        let sign = if self.c_plus() % 2 == 0 { 1 } else { -1 };
        sign << self.c()
    }
}

/// Walks every basic subgraph by placing components at the lowest undecided
/// vertex: leave it uncovered, cover it with an edge to a larger neighbour,
/// or cover it with an even cycle whose smallest vertex it is.
struct Walker<'a, F> {
    g: &'a OrientedGraph,
    /// Even cycles grouped by their smallest vertex.
    cycles_by_min: Vec<Vec<(u64, usize)>>,
    cycles: &'a [CycleData],
    target: Option<usize>,
    edges: Vec<(Vertex, Vertex)>,
    chosen: Vec<usize>,
    visit: F,
}

impl<F: FnMut(&[(Vertex, Vertex)], &[usize], usize)> Walker<'_, F> {
    fn run(&mut self, v: usize, covered: u64, count: usize) {
        let n = self.g.order();
        if let Some(t) = self.target {
            if count == t {
                (self.visit)(&self.edges, &self.chosen, count);
                return;
            }
            let avail = (v..n).filter(|&w| covered & bit(w) == 0).count();
            if count + avail < t {
                return;
            }
        }
        if v == n {
            if self.target.is_none() {
                (self.visit)(&self.edges, &self.chosen, count);
            }
            return;
        }
        if covered & bit(v) != 0 {
            return self.run(v + 1, covered, count);
        }
        self.run(v + 1, covered, count);
        let higher = !full_mask(v + 1);
        for u in bits(self.g.neighbor_mask(v) & higher & !covered) {
            self.edges.push((v, u));
            self.run(v + 1, covered | bit(v) | bit(u), count + 2);
            self.edges.pop();
        }
        for i in 0..self.cycles_by_min[v].len() {
            let (mask, idx) = self.cycles_by_min[v][i];
            if mask & covered != 0 {
                continue;
            }
            let len = self.cycles[idx].len();
            if self.target.is_some_and(|t| count + len > t) {
                continue;
            }
            self.chosen.push(idx);
            self.run(v + 1, covered | mask, count + len);
            self.chosen.pop();
        }
    }
}

fn walk(
    g: &OrientedGraph,
    cycles: &[CycleData],
    target: Option<usize>,
    visit: impl FnMut(&[(Vertex, Vertex)], &[usize], usize),
) {
    let mut cycles_by_min = vec![Vec::new(); g.order()];
    for (idx, c) in cycles.iter().enumerate() {
        cycles_by_min[c.vertices()[0]].push((c.mask(), idx));
    }
    let mut w = Walker {
        g,
        cycles_by_min,
        cycles,
        target,
        edges: Vec::new(),
        chosen: Vec::new(),
        visit,
    };
    w.run(0, 0, 0);
}

/// All basic subgraphs spanning exactly `i` vertices.
pub fn basic_subgraphs(g: &OrientedGraph, i: usize) -> Vec<BasicSubgraph> {
    let mut out = Vec::new();
    if i % 2 == 1 || i > g.order() {
        return out;
    }
    let cycles = even_cycles(g);
    walk(g, &cycles, Some(i), |edges, chosen, _| {
        out.push(BasicSubgraph {
            edges: edges.to_vec(),
            cycles: chosen.iter().map(|&c| cycles[c].clone()).collect(),
        })
    });
    out
}

fn contribution_of(cycles: &[CycleData], chosen: &[usize]) -> i128 {
    let plus = chosen.iter().filter(|&&c| cycles[c].is_evenly_oriented()).count();
    let sign = if plus % 2 == 0 { 1 } else { -1 };
    sign << chosen.len()
}

/// `a_i` as the signed count over basic subgraphs on `i` vertices.
pub fn coefficient_comb(g: &OrientedGraph, i: usize) -> BigInt {
    if i % 2 == 1 || i > g.order() {
        return BigInt::zero();
    }
    let cycles = even_cycles(g);
    let mut total = 0i128;
    walk(g, &cycles, Some(i), |_, chosen, _| {
        total += contribution_of(&cycles, chosen)
    });
    BigInt::from(total)
}

/// Every `a_0..=a_n` in one pass over all basic subgraphs.
pub fn coefficients_comb(g: &OrientedGraph) -> Vec<BigInt> {
    let cycles = even_cycles(g);
    let mut acc = vec![0i128; g.order() + 1];
    walk(g, &cycles, None, |_, chosen, count| {
        acc[count] += contribution_of(&cycles, chosen)
    });
    acc.into_iter().map(BigInt::from).collect()
}

/// `a_index` split into basic subgraphs made of edges only and those that
/// contain the cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientSplit {
    pub index: usize,
    #[serde(serialize_with = "serialize_bigint")]
    pub matchings_only: BigInt,
    #[serde(serialize_with = "serialize_bigint")]
    pub with_cycle: BigInt,
    #[serde(serialize_with = "serialize_bigint")]
    pub total: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnicyclicCoefficients {
    pub beta: usize,
    pub cycle: CycleData,
    /// Split of `a_(2 beta)`.
    pub top: CoefficientSplit,
    /// Split of `a_(2 beta - 2)`.
    pub below: CoefficientSplit,
}

/// `a_(2 beta)` and `a_(2 beta - 2)` of a unicyclic graph. The only even
/// cycle a basic subgraph can use is the graph's own cycle, so each
/// coefficient is the matching count plus `±2` times the matching count of
/// the graph with the cycle removed.
pub fn unicyclic_max_coeff(g: &OrientedGraph) -> Result<UnicyclicCoefficients> {
    let cycle = unique_cycle(g)?;
    let adj = g.adjacency_masks();
    let all = g.vertex_mask();
    let beta = beta_mask(adj, all);
    let counts = matching_counts_mask(adj, all);
    let outside = all & !cycle.mask();
    let outside_counts = matching_counts_mask(adj, outside);
    let k = cycle.len();
    let split = |index: usize| {
        let matchings_only = BigInt::from(counts.get(index / 2).copied().unwrap_or(0));
        let with_cycle = if k % 2 == 0 && index >= k {
            let m = outside_counts.get((index - k) / 2).copied().unwrap_or(0);
            let sign = if cycle.is_evenly_oriented() { -2 } else { 2 };
            BigInt::from(m) * sign
        } else {
            BigInt::zero()
        };
        CoefficientSplit {
            index,
            total: &matchings_only + &with_cycle,
            matchings_only,
            with_cycle,
        }
    };
    Ok(UnicyclicCoefficients {
        beta,
        top: split(2 * beta),
        below: split(2 * beta - 2),
        cycle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family, FamilySpec, OrientationRule};
    use crate::linalg::{char_poly_exact, skew_adjacency};

    fn family(f: Family) -> OrientedGraph {
        generate_family(&FamilySpec::new(f, OrientationRule::UniformCyclic)).unwrap()
    }

    fn c4(oddly: bool) -> OrientedGraph {
        let g = family(Family::Cycle { n: 4 });
        if oddly {
            g.with_reversed_edge(0, 1).unwrap()
        } else {
            g
        }
    }

    #[test]
    fn basic_subgraph_examples() {
        let subs = basic_subgraphs(&c4(false), 4);
        assert_eq!(subs.len(), 3);
        assert_eq!(subs.iter().filter(|s| s.c() == 1).count(), 1);
        assert_eq!(basic_subgraphs(&family(Family::Path { n: 3 }), 2).len(), 2);
        let k5 = family(Family::CompleteMultipartite { parts: vec![1; 5] });
        assert!(basic_subgraphs(&k5, 3).is_empty());
        assert!(basic_subgraphs(&k5, 4).iter().all(|s| s.vertex_count() == 4));
    }

    #[test]
    fn coefficient_examples() {
        let k23 = family(Family::CompleteMultipartite { parts: vec![2, 3] });
        assert_eq!(coefficient_comb(&k23, 2), BigInt::from(k23.size()));
        assert_eq!(coefficient_comb(&c4(false), 4), BigInt::from(0));
        assert_eq!(coefficient_comb(&c4(true), 4), BigInt::from(4));
        assert_eq!(coefficient_comb(&c4(true), 3), BigInt::from(0));
        assert_eq!(coefficient_comb(&c4(true), 0), BigInt::from(1));
    }

    #[test]
    fn all_coefficients_match_charpoly_on_small_families() {
        for g in [
            c4(false),
            c4(true),
            family(Family::CompleteMultipartite { parts: vec![2, 2, 2] }),
            family(Family::CompleteMultipartite { parts: vec![1; 6] }),
            family(Family::UStar { n: 8, k: 4 }),
        ] {
            let exact = char_poly_exact(&skew_adjacency(&g));
            assert_eq!(coefficients_comb(&g), exact.coefficients());
        }
    }

    #[test]
    fn unicyclic_split_examples() {
        let even = unicyclic_max_coeff(&c4(false)).unwrap();
        assert_eq!(even.beta, 2);
        assert_eq!(even.top.matchings_only, BigInt::from(2));
        assert_eq!(even.top.with_cycle, BigInt::from(-2));
        assert_eq!(even.top.total, BigInt::from(0));

        let g1 = unicyclic_max_coeff(&family(Family::G1)).unwrap();
        assert_eq!(g1.beta, 2);
        // The only two-edge matching is {03, 12}.
        assert_eq!(g1.top.total, BigInt::from(1));
        assert_eq!(g1.top.with_cycle, BigInt::from(0));

        let c6 = family(Family::Cycle { n: 6 }).with_reversed_edge(0, 1).unwrap();
        let odd = unicyclic_max_coeff(&c6).unwrap();
        assert_eq!(odd.beta, 3);
        assert_eq!(odd.top.matchings_only, BigInt::from(2));
        assert_eq!(odd.top.with_cycle, BigInt::from(2));
        assert_eq!(odd.top.total, BigInt::from(4));
    }

    #[test]
    fn unicyclic_split_matches_general_route() {
        for f in [
            Family::Hnk { n: 7, k: 4 },
            Family::UStar { n: 8, k: 4 },
            Family::UStar { n: 7, k: 3 },
            Family::Cycle { n: 8 },
        ] {
            let g = family(f);
            let u = unicyclic_max_coeff(&g).unwrap();
            assert_eq!(u.top.total, coefficient_comb(&g, u.top.index));
            assert_eq!(u.below.total, coefficient_comb(&g, u.below.index));
        }
    }
}
