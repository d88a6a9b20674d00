//! Deciders for skew-rank 2 and for skew-rank 4 with a pendant vertex.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, bits, multipartite_parts, CycleData, OrientedGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rank2Rule {
    /// Orders 2 to 4, matched against the explicit list of rank-2 graphs.
    SmallOrderCatalog,
    /// Complete bipartite or tripartite with every 4-cycle evenly-oriented.
    Multipartite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank2Witness {
    pub value: bool,
    pub rule: Rank2Rule,
    /// Parts of the underlying graph, if it is complete multipartite.
    pub partition: Option<Vec<Vec<Vertex>>>,
    pub four_cycles_checked: usize,
    /// A 4-cycle with the wrong sign, when one exists.
    pub oddly_oriented_four_cycle: Option<CycleData>,
}

/// Counts the 4-cycles inside `within` and returns the first oddly-oriented
/// one as a vertex sequence.
fn scan_four_cycles(g: &OrientedGraph, within: u64) -> (usize, Option<[Vertex; 4]>) {
    let vs: Vec<Vertex> = bits(within).collect();
    let mut count = 0;
    let mut bad = None;
    for (ia, &a) in vs.iter().enumerate() {
        for (ib, &b) in vs.iter().enumerate().skip(ia + 1) {
            for (ic, &c) in vs.iter().enumerate().skip(ib + 1) {
                for &d in &vs[ic + 1..] {
                    for cyc in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                        let mut negatives = 0;
                        let mut closed = true;
                        for i in 0..4 {
                            match g.sign(cyc[i], cyc[(i + 1) % 4]) {
                                0 => {
                                    closed = false;
                                    break;
                                }
                                s if s < 0 => negatives += 1,
                                _ => {}
                            }
                        }
                        if closed {
                            count += 1;
                            if negatives % 2 == 1 && bad.is_none() {
                                bad = Some(cyc);
                            }
                        }
                    }
                }
            }
        }
    }
    (count, bad)
}

/// Parts, 4-cycle count, and first bad 4-cycle of the subgraph on `within`.
struct MultipartiteScan {
    parts: Option<Vec<u64>>,
    checked: usize,
    bad: Option<[Vertex; 4]>,
}

impl MultipartiteScan {
    fn run(g: &OrientedGraph, within: u64) -> Self {
        let parts = multipartite_parts(g.adjacency_masks(), within);
        let (checked, bad) = match &parts {
            Some(p) if (2..=3).contains(&p.len()) => scan_four_cycles(g, within),
            _ => (0, None),
        };
        Self {
            parts,
            checked,
            bad,
        }
    }

    /// Bipartite or tripartite with no oddly-oriented 4-cycle.
    fn accepts(&self) -> bool {
        matches!(&self.parts, Some(p) if (2..=3).contains(&p.len())) && self.bad.is_none()
    }

    fn partition(&self) -> Option<Vec<Vec<Vertex>>> {
        self.parts
            .as_ref()
            .map(|p| p.iter().map(|&m| bits(m).collect()).collect())
    }

    fn bad_cycle(&self, g: &OrientedGraph) -> Option<CycleData> {
        self.bad
            .map(|c| CycleData::from_sequence_unchecked(g, c.to_vec()))
    }
}

/// The rank-2 graphs of order at most 4: `P_2`, every orientation of `P_3`
/// and `K_3`, `K_{1,3}` in any orientation, and `C_4` or `K_{1,1,2}` with
/// their 4-cycles evenly-oriented.
fn small_catalog(g: &OrientedGraph, scan: &MultipartiteScan) -> bool {
    let n = g.order();
    match (n, g.size()) {
        (2, _) | (3, _) => true,
        (4, 3) => (0..4).any(|v| g.degree(v) == 3),
        (4, 4) => (0..4).all(|v| g.degree(v) == 2) && scan.bad.is_none(),
        (4, 5) => scan.bad.is_none(),
        _ => false,
    }
}

/// Decides `sr(g) = 2` for a connected graph on at least two vertices.
pub fn rank2_classify(g: &OrientedGraph) -> Result<Rank2Witness> {
    g.require_connected()?;
    if g.order() < 2 {
        return Err(Error::Precondition(
            "rank-2 classification needs at least two vertices".into(),
        ));
    }
    let mut scan = MultipartiteScan::run(g, g.vertex_mask());
    let (rule, value) = if g.order() <= 4 {
        if scan.checked == 0 {
            // The catalog also looks at 4-cycles of non-multipartite graphs.
            (scan.checked, scan.bad) = scan_four_cycles(g, g.vertex_mask());
        }
        (Rank2Rule::SmallOrderCatalog, small_catalog(g, &scan))
    } else {
        (Rank2Rule::Multipartite, scan.accepts())
    };
    Ok(Rank2Witness {
        value,
        rule,
        partition: scan.partition(),
        four_cycles_checked: scan.checked,
        oddly_oriented_four_cycle: scan.bad_cycle(g),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank4Witness {
    pub value: bool,
    /// Neighbour of the lowest pendant vertex.
    pub center: Vertex,
    /// Every pendant vertex hanging off `center`.
    pub leaves: Vec<Vertex>,
    /// The vertices left after removing `center` and `leaves`.
    pub core: Vec<Vertex>,
    pub core_connected: bool,
    pub core_partition: Option<Vec<Vec<Vertex>>>,
    pub oddly_oriented_four_cycle: Option<CycleData>,
}

/// Decides `sr(g) = 4` for a connected graph with a pendant vertex.
///
/// Deleting a pendant and its neighbour `c` removes exactly 2 from the rank
/// and leaves the other leaves of `c` isolated, so the rank is 4 exactly
/// when the rest (the core) is a connected rank-2 graph. Any pendant may be
/// used; the lowest one fixes the centre.
pub fn rank4_pendant_classify(g: &OrientedGraph) -> Result<Rank4Witness> {
    g.require_connected()?;
    let adj = g.adjacency_masks();
    let pendant = (0..g.order())
        .find(|&v| g.degree(v) == 1)
        .ok_or(Error::NoPendant)?;
    let center = adj[pendant].trailing_zeros() as usize;
    let leaves: u64 = bits(adj[center])
        .filter(|&u| adj[u] == bit(center))
        .fold(0, |m, u| m | bit(u));
    let core = g.vertex_mask() & !bit(center) & !leaves;
    let core_connected = core != 0 && g.reach(core.trailing_zeros() as usize, core) == core;
    let scan = if core_connected && core.count_ones() >= 2 {
        Some(MultipartiteScan::run(g, core))
    } else {
        None
    };
    Ok(Rank4Witness {
        value: scan.as_ref().is_some_and(MultipartiteScan::accepts),
        center,
        leaves: bits(leaves).collect(),
        core: bits(core).collect(),
        core_connected,
        core_partition: scan.as_ref().and_then(MultipartiteScan::partition),
        oddly_oriented_four_cycle: scan.as_ref().and_then(|s| s.bad_cycle(g)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family, FamilySpec, OrientationRule};
    use crate::linalg::skew_rank;

    fn family(f: Family, o: OrientationRule) -> OrientedGraph {
        generate_family(&FamilySpec::new(f, o)).unwrap()
    }

    fn k23() -> OrientedGraph {
        family(
            Family::CompleteMultipartite { parts: vec![2, 3] },
            OrientationRule::AllFromFirstPart,
        )
    }

    #[test]
    fn rank2_examples() {
        let w = rank2_classify(&k23()).unwrap();
        assert!(w.value);
        assert_eq!(w.four_cycles_checked, 3);
        assert_eq!(w.partition, Some(vec![vec![0, 1], vec![2, 3, 4]]));

        let flipped = k23().with_reversed_edge(0, 2).unwrap();
        let w = rank2_classify(&flipped).unwrap();
        assert!(!w.value);
        assert!(w.oddly_oriented_four_cycle.is_some());
        assert_eq!(skew_rank(&flipped), 4);

        let k5 = family(
            Family::CompleteMultipartite { parts: vec![1; 5] },
            OrientationRule::SeedRandom(3),
        );
        assert!(!rank2_classify(&k5).unwrap().value);
    }

    #[test]
    fn rank2_small_catalog() {
        let uc = OrientationRule::UniformCyclic;
        assert!(rank2_classify(&family(Family::Path { n: 2 }, uc.clone())).unwrap().value);
        assert!(rank2_classify(&family(Family::Cycle { n: 3 }, uc.clone())).unwrap().value);
        assert!(rank2_classify(&family(Family::Star { n: 4 }, uc.clone())).unwrap().value);
        assert!(!rank2_classify(&family(Family::Path { n: 4 }, uc.clone())).unwrap().value);
        assert!(!rank2_classify(&family(Family::G1, uc.clone())).unwrap().value);
        let c4 = family(Family::Cycle { n: 4 }, uc.clone());
        assert!(rank2_classify(&c4).unwrap().value);
        assert!(!rank2_classify(&c4.with_reversed_edge(0, 1).unwrap()).unwrap().value);
        assert!(rank2_classify(&OrientedGraph::empty(1).unwrap()).is_err());
        let split = OrientedGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(rank2_classify(&split), Err(Error::Disconnected));
    }

    #[test]
    fn rank4_examples() {
        let uc = OrientationRule::UniformCyclic;
        let p4 = rank4_pendant_classify(&family(Family::Path { n: 4 }, uc.clone())).unwrap();
        assert!(p4.value);
        assert_eq!((p4.center, p4.leaves.clone(), p4.core.clone()), (1, vec![0], vec![2, 3]));

        for seed in 0..32 {
            let h = family(Family::Hnk { n: 5, k: 4 }, OrientationRule::SeedRandom(seed));
            assert!(rank4_pendant_classify(&h).unwrap().value);
            assert_eq!(skew_rank(&h), 4);
        }
        assert!(!rank4_pendant_classify(&family(Family::Path { n: 6 }, uc.clone())).unwrap().value);
        let c4 = family(Family::Cycle { n: 4 }, uc);
        assert_eq!(rank4_pendant_classify(&c4), Err(Error::NoPendant));
    }
}
