//! Exhaustive catalog of unicyclic and bicyclic underlying graphs that
//! admit an orientation of skew-rank 4.
//!
//! Switching (negating the rows and columns of a vertex set) preserves the
//! rank, and every switching class of orientations contains exactly one
//! orientation that agrees with a fixed orientation on a spanning tree. So
//! it suffices to rank the `2^(m - n + 1)` orientations of the non-tree
//! edges.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, even_cycles, CycleData, CycleSign, OrientedGraph, Vertex};
use crate::harness::{orientation, underlying_graphs, Connectivity, GraphClass};
use crate::linalg::skew_rank;

pub const CATALOG_MAX_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CatalogClass {
    Unicyclic,
    /// Bicyclic graphs with at least one pendant vertex.
    Bicyclic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "patterns")]
pub enum OrientationCondition {
    /// Every orientation has skew-rank 4.
    Any,
    /// Exactly the orientations whose even cycles are all evenly-oriented.
    EvenCyclesEvenlyOriented,
    /// Exactly the orientations whose 4-cycles are all evenly-oriented.
    FourCyclesEvenlyOriented,
    /// Exactly the orientations whose even cycles are all oddly-oriented.
    EvenCyclesOddlyOriented,
    /// The listed sign vectors, one entry per cycle in `even_cycles`.
    SignPatterns(Vec<Vec<CycleSign>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    /// Edges written from the smaller label to the larger.
    pub underlying: OrientedGraph,
    pub even_cycles: Vec<Vec<Vertex>>,
    pub switching_classes: usize,
    pub rank4_classes: usize,
    pub condition: OrientationCondition,
    /// One orientation from each rank-4 switching class.
    pub representatives: Vec<OrientedGraph>,
}

/// Orientation masks (see [`orientation`]) of one representative per
/// switching class: tree edges of a breadth-first spanning tree stay
/// `smaller -> larger`, non-tree edges take every combination.
pub fn switching_representatives(underlying: &OrientedGraph) -> Vec<OrientedGraph> {
    let edges = underlying.edges();
    let mut seen = 0u64;
    let mut tree = vec![false; edges.len()];
    for root in 0..underlying.order() {
        if seen & bit(root) != 0 {
            continue;
        }
        seen |= bit(root);
        let mut queue = vec![root];
        while let Some(u) = queue.pop() {
            for (j, &(a, b)) in edges.iter().enumerate() {
                let w = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if seen & bit(w) == 0 {
                    seen |= bit(w);
                    tree[j] = true;
                    queue.insert(0, w);
                }
            }
        }
    }
    let free: Vec<usize> = (0..edges.len()).filter(|&j| !tree[j]).collect();
    (0u64..1 << free.len())
        .map(|choice| {
            let mask = free
                .iter()
                .enumerate()
                .filter(|&(i, _)| choice >> i & 1 == 1)
                .fold(0u64, |m, (_, &j)| m | bit(j));
            orientation(underlying, mask)
        })
        .collect()
}

fn signs(g: &OrientedGraph, cycles: &[CycleData]) -> Vec<CycleSign> {
    cycles
        .iter()
        .map(|c| CycleData::from_sequence(g, c.vertices().to_vec()).map_or(CycleSign::Undefined, |d| d.sign()))
        .collect()
}

/// Lists every underlying graph of the class on `n` vertices that has an
/// orientation of skew-rank 4, with the orientations that achieve it.
pub fn catalog_rank4(n: usize, class: CatalogClass) -> Result<Vec<CatalogEntry>> {
    if n > CATALOG_MAX_ORDER {
        return Err(Error::BoundExceeded {
            n,
            bound: CATALOG_MAX_ORDER,
        });
    }
    let graph_class = match class {
        CatalogClass::Unicyclic => GraphClass::Unicyclic,
        CatalogClass::Bicyclic => GraphClass::Bicyclic,
    };
    let mut out = Vec::new();
    for g in underlying_graphs(n, Connectivity::Connected, graph_class)? {
        if class == CatalogClass::Bicyclic && !g.has_pendant() {
            continue;
        }
        let cycles = even_cycles(&g);
        let reps = switching_representatives(&g);
        let ranked: Vec<(OrientedGraph, Vec<CycleSign>, bool)> = reps
            .into_iter()
            .map(|r| {
                let s = signs(&r, &cycles);
                let hit = skew_rank(&r) == 4;
                (r, s, hit)
            })
            .collect();
        let hits = ranked.iter().filter(|r| r.2).count();
        if hits == 0 {
            continue;
        }
        let matches = |pred: &dyn Fn(&[CycleSign], &[CycleData]) -> bool| {
            ranked.iter().all(|(_, s, hit)| pred(s, &cycles) == *hit)
        };
        let condition = if hits == ranked.len() {
            OrientationCondition::Any
        } else if matches(&|s, _| s.iter().all(|&x| x == CycleSign::Positive)) {
            OrientationCondition::EvenCyclesEvenlyOriented
        } else if matches(&|s, c| {
            s.iter()
                .zip(c)
                .all(|(&x, c)| c.len() != 4 || x == CycleSign::Positive)
        }) {
            OrientationCondition::FourCyclesEvenlyOriented
        } else if matches(&|s, _| s.iter().all(|&x| x == CycleSign::Negative)) {
            OrientationCondition::EvenCyclesOddlyOriented
        } else {
            OrientationCondition::SignPatterns(
                ranked
                    .iter()
                    .filter(|r| r.2)
                    .map(|r| r.1.clone())
                    .collect(),
            )
        };
        out.push(CatalogEntry {
            even_cycles: cycles.iter().map(|c| c.vertices().to_vec()).collect(),
            switching_classes: ranked.len(),
            rank4_classes: hits,
            condition,
            representatives: ranked.into_iter().filter(|r| r.2).map(|r| r.0).collect(),
            underlying: g,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::orientations_of;

    fn find<'a>(entries: &'a [CatalogEntry], edges: &[(usize, usize)]) -> Option<&'a CatalogEntry> {
        entries.iter().find(|e| e.underlying.edges() == edges)
    }

    #[test]
    fn switching_classes_cover_all_ranks() {
        let k4 = OrientedGraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let reps = switching_representatives(&k4);
        assert_eq!(reps.len(), 8);
        let mut from_reps: Vec<usize> = reps.iter().map(skew_rank).collect();
        let mut from_all: Vec<usize> = orientations_of(&k4).map(|g| skew_rank(&g)).collect();
        from_reps.sort();
        from_reps.dedup();
        from_all.sort();
        from_all.dedup();
        assert_eq!(from_reps, from_all);
    }

    #[test]
    fn small_unicyclic_catalog() {
        let c4 = catalog_rank4(4, CatalogClass::Unicyclic).unwrap();
        let cyc = find(&c4, &[(0, 1), (0, 3), (1, 2), (2, 3)]).unwrap();
        assert_eq!(cyc.condition, OrientationCondition::EvenCyclesOddlyOriented);

        let c5 = catalog_rank4(5, CatalogClass::Unicyclic).unwrap();
        let pentagon = find(&c5, &[(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(pentagon.condition, OrientationCondition::Any);

        let c6 = catalog_rank4(6, CatalogClass::Unicyclic).unwrap();
        let hexagon = find(&c6, &[(0, 1), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        assert_eq!(hexagon.condition, OrientationCondition::EvenCyclesEvenlyOriented);
        assert!(catalog_rank4(9, CatalogClass::Unicyclic).is_err());
    }

    #[test]
    fn bicyclic_entries_have_pendants() {
        let b = catalog_rank4(6, CatalogClass::Bicyclic).unwrap();
        assert!(!b.is_empty());
        assert!(b.iter().all(|e| e.underlying.has_pendant() && e.underlying.size() == 7));
    }
}
