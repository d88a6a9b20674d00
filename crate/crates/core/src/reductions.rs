//! Rank-accounting reductions: pendant deletion (the δ-transformation), twin
//! deletion, and the δ-class of a unicyclic graph.
//!
//! Deleting a pendant vertex together with its neighbour lowers the skew-rank
//! by exactly 2. Deleting one of two non-adjacent vertices whose columns of
//! `S` are equal or negated leaves it unchanged. Traces record every step
//! with vertex labels of the original graph.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, bits, components, full_mask, unique_cycle, OrientedGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    Delta,
    Twin,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub kind: StepKind,
    /// Original labels of the deleted vertices. For a δ-step the pendant
    /// comes first, then its neighbour.
    pub removed: Vec<Vertex>,
    pub rank_increment: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub terminal: OrientedGraph,
    /// `terminal_labels[i]` is the original label of terminal vertex `i`.
    pub terminal_labels: Vec<Vertex>,
    /// Sum of the step increments.
    pub accumulated: usize,
}

impl Serialize for ReductionTrace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ReductionTrace", 4)?;
        st.serialize_field("steps", &self.steps)?;
        st.serialize_field("terminal", &self.terminal)?;
        st.serialize_field("terminal_labels", &self.terminal_labels)?;
        st.serialize_field("accumulated", &self.accumulated)?;
        st.end()
    }
}

impl ReductionTrace {
    /// Replays the trace from `original`, returning the graph before each
    /// step and after the last. `states[i]` is the graph on which step `i`
    /// acts, with its labels.
    pub fn replay(&self, original: &OrientedGraph) -> Vec<(OrientedGraph, Vec<Vertex>)> {
        let mut states = vec![(original.clone(), (0..original.order()).collect::<Vec<_>>())];
        let mut removed = 0u64;
        for step in &self.steps {
            for &v in &step.removed {
                removed |= bit(v);
            }
            states.push(original.induced_mask(original.vertex_mask() & !removed));
        }
        states
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaStep {
    pub graph: OrientedGraph,
    /// Back-map from vertices of `graph` to vertices of the input.
    pub labels: Vec<Vertex>,
    pub neighbor: Vertex,
    pub increment: usize,
}

/// Deletes `pendant` and its unique neighbour.
pub fn delta_step(g: &OrientedGraph, pendant: Vertex) -> Result<DeltaStep> {
    g.check_vertex(pendant)?;
    if g.degree(pendant) != 1 {
        return Err(Error::NotPendant(pendant));
    }
    let neighbor = g.neighbor_mask(pendant).trailing_zeros() as usize;
    let (graph, labels) = g.remove_vertices(&[pendant, neighbor]);
    Ok(DeltaStep {
        graph,
        labels,
        neighbor,
        increment: 2,
    })
}

/// Applies δ-steps at the lowest-indexed pendant vertex until none is left.
pub fn delta_reduce(g: &OrientedGraph) -> ReductionTrace {
    let adj = g.adjacency_masks();
    let mut alive = g.vertex_mask();
    let mut steps = Vec::new();
    while let Some(p) = bits(alive).find(|&v| (adj[v] & alive).count_ones() == 1) {
        let q = (adj[p] & alive).trailing_zeros() as usize;
        alive &= !(bit(p) | bit(q));
        steps.push(ReductionStep {
            kind: StepKind::Delta,
            removed: vec![p, q],
            rank_increment: 2,
        });
    }
    finish(g, steps, alive)
}

fn finish(g: &OrientedGraph, steps: Vec<ReductionStep>, alive: u64) -> ReductionTrace {
    let (terminal, terminal_labels) = g.induced_mask(alive);
    let accumulated = steps.iter().map(|s| s.rank_increment).sum();
    ReductionTrace {
        steps,
        terminal,
        terminal_labels,
        accumulated,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwinKind {
    /// Identical columns of `S`.
    Uniform,
    /// Negated columns of `S`.
    Opposite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Twins {
    pub u: Vertex,
    pub v: Vertex,
    pub kind: TwinKind,
}

/// Twin relation between `u` and `v` inside the vertex set `alive`.
/// Whether `u` and `v` are twins in `g`, and of which kind.
pub fn twin_kind(g: &OrientedGraph, u: Vertex, v: Vertex) -> Option<TwinKind> {
    twin_kind_within(g, g.vertex_mask(), u, v)
}

fn twin_kind_within(g: &OrientedGraph, alive: u64, u: Vertex, v: Vertex) -> Option<TwinKind> {
    let nu = g.neighbor_mask(u) & alive;
    if nu == 0 || nu != g.neighbor_mask(v) & alive || nu & bit(v) != 0 {
        return None;
    }
    // Column entries s_wu and s_wv agree exactly when the two out-masks
    // restricted to the shared neighbourhood agree.
    let ou = g.out_mask(u) & nu;
    let ov = g.out_mask(v) & nu;
    if ou == ov {
        Some(TwinKind::Uniform)
    } else if ou == nu & !ov {
        Some(TwinKind::Opposite)
    } else {
        None
    }
}

/// Every pair of non-adjacent vertices with the same non-empty
/// neighbourhood whose columns of `S` are equal or negated.
pub fn find_twins(g: &OrientedGraph) -> Vec<Twins> {
    find_twins_within(g, g.vertex_mask())
}

fn find_twins_within(g: &OrientedGraph, alive: u64) -> Vec<Twins> {
    let mut out = Vec::new();
    for u in bits(alive) {
        for v in bits(alive & !full_mask(u + 1)) {
            if let Some(kind) = twin_kind_within(g, alive, u, v) {
                out.push(Twins { u, v, kind });
            }
        }
    }
    out
}

/// Repeatedly deletes the larger member of the lexicographically first twin
/// pair.
pub fn twin_reduce(g: &OrientedGraph) -> ReductionTrace {
    let mut alive = g.vertex_mask();
    let mut steps = Vec::new();
    'outer: loop {
        for u in bits(alive) {
            for v in bits(alive & !full_mask(u + 1)) {
                if twin_kind_within(g, alive, u, v).is_some() {
                    alive &= !bit(v);
                    steps.push(ReductionStep {
                        kind: StepKind::Twin,
                        removed: vec![v],
                        rank_increment: 0,
                    });
                    continue 'outer;
                }
            }
        }
        break;
    }
    finish(g, steps, alive)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum UnicyclicClass {
    /// δ-reduces to an edgeless graph.
    U1,
    /// δ-reduces to the cycle, possibly with isolated vertices.
    U2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaClass {
    pub class: UnicyclicClass,
    pub trace: ReductionTrace,
    /// Classes reachable over every possible order of δ-steps.
    pub reachable: Vec<UnicyclicClass>,
    /// Whether every order of δ-steps ends in the same class.
    pub confluent: bool,
}

/// The δ-class of a connected unicyclic graph, along with an exhaustive
/// check over all pendant-choice orders.
pub fn delta_class(g: &OrientedGraph) -> Result<DeltaClass> {
    let cycle = unique_cycle(g)?;
    let trace = delta_reduce(g);
    let class = classify_terminal(&trace.terminal);
    if class == UnicyclicClass::U2 {
        // The surviving edges must be exactly the cycle.
        let nontrivial: Vec<_> = components(&trace.terminal)
            .into_iter()
            .filter(|c| c.graph.size() > 0)
            .collect();
        let cycle_mask = cycle.mask();
        debug_assert!(
            nontrivial.len() == 1
                && nontrivial[0].graph.size() == cycle.len()
                && nontrivial[0]
                    .vertices
                    .iter()
                    .all(|&v| cycle_mask & bit(trace.terminal_labels[v]) != 0)
        );
    }
    let mut memo = HashMap::new();
    let outcomes = reachable_classes(g.adjacency_masks(), g.vertex_mask(), &mut memo);
    let reachable: Vec<_> = [UnicyclicClass::U1, UnicyclicClass::U2]
        .into_iter()
        .filter(|c| outcomes & class_bit(*c) != 0)
        .collect();
    Ok(DeltaClass {
        class,
        trace,
        confluent: reachable.len() == 1,
        reachable,
    })
}

fn classify_terminal(t: &OrientedGraph) -> UnicyclicClass {
    if t.size() == 0 {
        UnicyclicClass::U1
    } else {
        UnicyclicClass::U2
    }
}

fn class_bit(c: UnicyclicClass) -> u8 {
    match c {
        UnicyclicClass::U1 => 1,
        UnicyclicClass::U2 => 2,
    }
}

fn reachable_classes(adj: &[u64], alive: u64, memo: &mut HashMap<u64, u8>) -> u8 {
    if let Some(&r) = memo.get(&alive) {
        return r;
    }
    let mut result = 0u8;
    let mut any_pendant = false;
    for p in bits(alive) {
        let nb = adj[p] & alive;
        if nb.count_ones() == 1 {
            any_pendant = true;
            result |= reachable_classes(adj, alive & !(bit(p) | nb), memo);
        }
    }
    if !any_pendant {
        let has_edge = bits(alive).any(|v| adj[v] & alive != 0);
        result = if has_edge {
            class_bit(UnicyclicClass::U2)
        } else {
            class_bit(UnicyclicClass::U1)
        };
    }
    memo.insert(alive, result);
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family, FamilySpec, OrientationRule};
    use crate::linalg::skew_rank;

    fn family(f: Family) -> OrientedGraph {
        generate_family(&FamilySpec::new(f, OrientationRule::UniformCyclic)).unwrap()
    }

    #[test]
    fn delta_step_examples() {
        let p4 = family(Family::Path { n: 4 });
        let step = delta_step(&p4, 0).unwrap();
        assert_eq!(step.graph.order(), 2);
        assert_eq!(step.graph.size(), 1);
        assert_eq!(step.labels, vec![2, 3]);
        assert_eq!(skew_rank(&p4), step.increment + skew_rank(&step.graph));

        let h54 = family(Family::Hnk { n: 5, k: 4 });
        let step = delta_step(&h54, 4).unwrap();
        assert_eq!(step.neighbor, 0);
        assert_eq!(step.labels, vec![1, 2, 3]);
        assert_eq!(step.graph.size(), 2);
        assert!(step.graph.is_tree());

        let c4 = family(Family::Cycle { n: 4 });
        assert_eq!(delta_step(&c4, 0), Err(Error::NotPendant(0)));
    }

    #[test]
    fn delta_reduce_examples() {
        let p5 = delta_reduce(&family(Family::Path { n: 5 }));
        assert_eq!(p5.terminal.order(), 1);
        assert_eq!(p5.accumulated, 4);
        assert_eq!(p5.terminal_labels, vec![4]);

        let h74 = family(Family::Hnk { n: 7, k: 4 });
        let t = delta_reduce(&h74);
        assert_eq!(t.terminal.size(), 0);
        assert_eq!(t.accumulated, 4);
        assert_eq!(skew_rank(&h74), 4);
        assert_eq!(t.steps[0].removed, vec![4, 0]);

        let c6 = family(Family::Cycle { n: 6 });
        let t = delta_reduce(&c6);
        assert!(t.steps.is_empty());
        assert_eq!(t.terminal, c6);
        assert_eq!(t.accumulated, 0);
    }

    #[test]
    fn replay_matches_steps() {
        let g = family(Family::UStar { n: 8, k: 4 });
        let t = delta_reduce(&g);
        let states = t.replay(&g);
        assert_eq!(states.len(), t.steps.len() + 1);
        assert_eq!(states.last().unwrap().0, t.terminal);
        for (i, step) in t.steps.iter().enumerate() {
            assert_eq!(skew_rank(&states[i].0), step.rank_increment + skew_rank(&states[i + 1].0));
        }
    }

    #[test]
    fn twin_examples() {
        // Leaves 1 and 2 both point at the centre 0.
        let uniform = OrientedGraph::new(3, [(1, 0), (2, 0)]).unwrap();
        assert_eq!(
            find_twins(&uniform),
            vec![Twins { u: 1, v: 2, kind: TwinKind::Uniform }]
        );
        let opposite = OrientedGraph::new(3, [(1, 0), (0, 2)]).unwrap();
        assert_eq!(
            find_twins(&opposite),
            vec![Twins { u: 1, v: 2, kind: TwinKind::Opposite }]
        );
        assert!(find_twins(&family(Family::Path { n: 4 })).is_empty());
        // Same neighbourhood but mixed columns.
        let mixed = OrientedGraph::new(4, [(0, 2), (2, 1), (0, 3), (1, 3)]).unwrap();
        assert!(find_twins(&mixed).iter().all(|t| (t.u, t.v) != (2, 3)));
    }

    #[test]
    fn twin_reduce_examples() {
        let k23 = generate_family(&FamilySpec::new(
            Family::CompleteMultipartite { parts: vec![2, 3] },
            OrientationRule::AllFromFirstPart,
        ))
        .unwrap();
        let t = twin_reduce(&k23);
        assert_eq!(t.terminal.order(), 2);
        assert_eq!(t.terminal.size(), 1);
        assert_eq!(t.terminal_labels, vec![0, 2]);
        assert_eq!(skew_rank(&k23), 2);

        let star = OrientedGraph::new(6, [(1, 0), (0, 2), (3, 0), (0, 4), (5, 0)]).unwrap();
        let t = twin_reduce(&star);
        assert_eq!(t.terminal.order(), 2);
        assert_eq!(t.accumulated, 0);

        let c5 = family(Family::Cycle { n: 5 });
        let t = twin_reduce(&c5);
        assert!(t.steps.is_empty());
        assert_eq!(t.terminal, c5);
    }

    #[test]
    fn delta_class_examples() {
        let h54 = delta_class(&family(Family::Hnk { n: 5, k: 4 })).unwrap();
        assert_eq!(h54.class, UnicyclicClass::U1);
        assert_eq!(h54.trace.steps.len(), 2);
        assert!(h54.confluent);

        let ustar = delta_class(&family(Family::UStar { n: 6, k: 4 })).unwrap();
        assert_eq!(ustar.class, UnicyclicClass::U2);
        assert_eq!(ustar.trace.steps[0].removed, vec![5, 4]);
        assert_eq!(ustar.trace.terminal.size(), 4);

        let c4 = delta_class(&family(Family::Cycle { n: 4 })).unwrap();
        assert_eq!(c4.class, UnicyclicClass::U2);
        assert!(c4.trace.steps.is_empty());

        assert!(matches!(
            delta_class(&family(Family::Path { n: 4 })),
            Err(Error::NotUnicyclic { .. })
        ));
    }

    #[test]
    fn trace_serializes_terminal_as_sgr() {
        let t = delta_reduce(&family(Family::Path { n: 3 }));
        let json = serde_json::to_value(&t).unwrap();
        assert_eq!(json["terminal"], "1\n");
        assert_eq!(json["accumulated"], 2);
        assert_eq!(json["steps"][0]["kind"], "delta");
    }
}
