//! Rank predictions and structure for connected unicyclic graphs.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, bits, reach, unique_cycle, CycleData, OrientedGraph, Vertex};
use crate::linalg::{determinant_exact, skew_adjacency, skew_rank};
use crate::matching::{beta_mask, has_perfect_matching};
use crate::reductions::{delta_class, UnicyclicClass};
use crate::spectra::{unicyclic_max_coeff, UnicyclicCoefficients};

/// `sr(P_n)`: `n` for even `n`, `n - 1` for odd `n`.
pub fn path_skew_rank(n: usize) -> usize {
    n - n % 2
}

/// `sr(C_k)`: `k - 1` for odd `k`, `k` when oddly-oriented, `k - 2` when
/// evenly-oriented.
pub fn cycle_skew_rank(cycle: &CycleData) -> usize {
    let k = cycle.len();
    if k % 2 == 1 {
        k - 1
    } else if cycle.is_oddly_oriented() {
        k
    } else {
        k - 2
    }
}

fn rank_of(g: &OrientedGraph, mask: u64) -> usize {
    skew_rank(&g.induced_mask(mask).0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnicyclicPrediction {
    pub beta: usize,
    /// `beta(g - C)`.
    pub beta_without_cycle: usize,
    pub cycle: CycleData,
    /// `2 beta - 2` when the cycle is evenly-oriented and
    /// `beta = 2 beta(g - C)`, otherwise `2 beta`.
    pub literal: usize,
    /// The largest of `2 beta`, `2 beta - 2` whose coefficient is non-zero.
    pub coefficient: Option<usize>,
    pub actual: usize,
    pub coefficients: UnicyclicCoefficients,
}

impl UnicyclicPrediction {
    pub fn literal_holds(&self) -> bool {
        self.literal == self.actual
    }

    pub fn coefficient_holds(&self) -> bool {
        self.coefficient == Some(self.actual)
    }
}

pub fn unicyclic_rank_predicted(g: &OrientedGraph) -> Result<UnicyclicPrediction> {
    let coefficients = unicyclic_max_coeff(g)?;
    let cycle = coefficients.cycle.clone();
    let beta = coefficients.beta;
    let beta_without_cycle = beta_mask(g.adjacency_masks(), g.vertex_mask() & !cycle.mask());
    let literal = if cycle.is_evenly_oriented() && beta == 2 * beta_without_cycle {
        2 * beta - 2
    } else {
        2 * beta
    };
    let coefficient = if !coefficients.top.total.is_zero() {
        Some(2 * beta)
    } else if !coefficients.below.total.is_zero() {
        Some(2 * beta - 2)
    } else {
        None
    };
    Ok(UnicyclicPrediction {
        beta,
        beta_without_cycle,
        literal,
        coefficient,
        actual: skew_rank(g),
        cycle,
        coefficients,
    })
}

/// Least skew-rank of a unicyclic graph of order `n` and girth `k < n`.
pub fn min_girth_bound(n: usize, k: usize) -> Result<usize> {
    if k < 3 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "girth bound needs 3 <= k < n, got n = {n}, k = {k}"
        )));
    }
    Ok(if k % 2 == 0 { k } else { k + 1 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PendantTree {
    /// The cycle vertex the tree hangs from.
    pub root: Vertex,
    pub vertices: Vec<Vertex>,
    /// Whether every maximum matching of the tree covers the root.
    pub root_saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "case")]
pub enum DecompositionCase {
    /// `sr(g) = sr(G{v}) + sr(g - G{v})` for the first saturated root.
    SaturatedRoot { root: Vertex },
    /// No saturated root: `sr(g) = sr(C) + sr(g - C)`.
    CycleSplit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PendantTreeDecomposition {
    pub cycle: CycleData,
    /// One tree per cycle vertex, in cycle order.
    pub trees: Vec<PendantTree>,
    pub case: DecompositionCase,
    /// Ranks of the two pieces the case splits `g` into.
    pub parts: (usize, usize),
    pub actual: usize,
}

impl PendantTreeDecomposition {
    pub fn identity_holds(&self) -> bool {
        self.parts.0 + self.parts.1 == self.actual
    }

    pub fn saturated_roots(&self) -> impl Iterator<Item = &PendantTree> {
        self.trees.iter().filter(|t| t.root_saturated)
    }
}

/// Splits a unicyclic graph into the trees `G{v}` hanging from its cycle.
pub fn pendant_tree_decompose(g: &OrientedGraph) -> Result<PendantTreeDecomposition> {
    let cycle = unique_cycle(g)?;
    let cv = cycle.vertices();
    let k = cv.len();
    let mut adj = g.adjacency_masks().to_vec();
    for i in 0..k {
        let (a, b) = (cv[i], cv[(i + 1) % k]);
        adj[a] &= !bit(b);
        adj[b] &= !bit(a);
    }
    let all = g.vertex_mask();
    let trees: Vec<PendantTree> = cv
        .iter()
        .map(|&root| {
            let mask = reach(&adj, root, all);
            let saturated = beta_mask(&adj, mask & !bit(root)) + 1 == beta_mask(&adj, mask);
            PendantTree {
                root,
                vertices: bits(mask).collect(),
                root_saturated: saturated,
            }
        })
        .collect();
    let mask_of = |t: &PendantTree| t.vertices.iter().fold(0u64, |m, &v| m | bit(v));
    let (case, parts) = match trees.iter().find(|t| t.root_saturated) {
        Some(t) => {
            let m = mask_of(t);
            (
                DecompositionCase::SaturatedRoot { root: t.root },
                (rank_of(g, m), rank_of(g, all & !m)),
            )
        }
        None => (
            DecompositionCase::CycleSplit,
            (rank_of(g, cycle.mask()), rank_of(g, all & !cycle.mask())),
        ),
    };
    Ok(PendantTreeDecomposition {
        cycle,
        trees,
        case,
        parts,
        actual: skew_rank(g),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "case")]
pub enum ExtremalCase {
    /// Every saturated root carries a star and leaves a remainder with the
    /// required matching number.
    SaturatedStar { root: Vertex },
    /// `U*` with an odd cycle, any orientation.
    UStarOddGirth { center: Vertex, bridge: (Vertex, Vertex) },
    /// `U*` with an evenly-oriented even cycle.
    UStarEvenlyOriented { center: Vertex, bridge: (Vertex, Vertex) },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalClassification {
    pub value: bool,
    pub girth: usize,
    pub bound: usize,
    pub case: Option<ExtremalCase>,
    pub saturated_roots: Vec<Vertex>,
}

/// Whether the tree on `mask` is a star on at least two vertices; returns
/// its centres.
fn star_centers(adj: &[u64], mask: u64) -> Vec<Vertex> {
    let order = mask.count_ones();
    if order < 2 {
        return Vec::new();
    }
    let edges: u32 = bits(mask).map(|v| (adj[v] & mask).count_ones()).sum::<u32>() / 2;
    if edges != order - 1 {
        return Vec::new();
    }
    bits(mask)
        .filter(|&v| (adj[v] & mask).count_ones() == order - 1)
        .collect()
}

/// Matches a graph attaining the girth bound to one of the two extremal
/// shapes. Fails with a precondition error unless `k < n` and the rank
/// equals the bound.
pub fn extremal_min_classify(g: &OrientedGraph) -> Result<ExtremalClassification> {
    let dec = pendant_tree_decompose(g)?;
    let n = g.order();
    let k = dec.cycle.len();
    let bound = min_girth_bound(n, k).map_err(|_| {
        Error::Precondition(format!("girth {k} must be below the order {n}"))
    })?;
    if dec.actual != bound {
        return Err(Error::Precondition(format!(
            "skew-rank {} differs from the girth bound {bound}",
            dec.actual
        )));
    }
    let adj = g.adjacency_masks();
    let all = g.vertex_mask();
    let saturated_roots: Vec<Vertex> = dec.saturated_roots().map(|t| t.root).collect();
    let case = if saturated_roots.is_empty() {
        ustar_case(g, &dec.cycle)
    } else {
        let want = if k % 2 == 0 { (k - 2) / 2 } else { (k - 1) / 2 };
        let ok = dec.saturated_roots().all(|t| {
            let m = t.vertices.iter().fold(0u64, |m, &v| m | bit(v));
            !star_centers(adj, m).is_empty() && beta_mask(adj, all & !m) == want
        });
        ok.then(|| ExtremalCase::SaturatedStar {
            root: saturated_roots[0],
        })
    };
    Ok(ExtremalClassification {
        value: case.is_some(),
        girth: k,
        bound,
        case,
        saturated_roots,
    })
}

/// Structural match of `U*`: the graph off the cycle is one star, joined to
/// the cycle by a single edge that lands on a centre of the star.
fn ustar_case(g: &OrientedGraph, cycle: &CycleData) -> Option<ExtremalCase> {
    let adj = g.adjacency_masks();
    let rest = g.vertex_mask() & !cycle.mask();
    if rest == 0 || reach(adj, rest.trailing_zeros() as usize, rest) != rest {
        return None;
    }
    let mut bridges = bits(cycle.mask())
        .flat_map(|c| bits(adj[c] & rest).map(move |r| (c, r)));
    let bridge = bridges.next()?;
    if bridges.next().is_some() {
        return None;
    }
    let centers = if rest.count_ones() == 1 {
        vec![bridge.1]
    } else {
        star_centers(adj, rest)
    };
    if !centers.contains(&bridge.1) {
        return None;
    }
    let center = bridge.1;
    if cycle.len() % 2 == 1 {
        Some(ExtremalCase::UStarOddGirth { center, bridge })
    } else if cycle.is_evenly_oriented() {
        Some(ExtremalCase::UStarEvenlyOriented { center, bridge })
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonsingularVerdict {
    pub value: bool,
    pub class: UnicyclicClass,
    pub has_perfect_matching: bool,
    pub cycle: CycleData,
    /// Whether `g - C` has a perfect matching.
    pub remainder_has_perfect_matching: bool,
}

/// Predicts `det S(g) != 0` for a unicyclic graph of even order.
pub fn nonsingular_unicyclic(g: &OrientedGraph) -> Result<NonsingularVerdict> {
    g.require_unicyclic()?;
    if g.order() % 2 == 1 {
        return Err(Error::OddOrder(g.order()));
    }
    let dc = delta_class(g)?;
    let cycle = unique_cycle(g)?;
    let perfect = has_perfect_matching(g);
    let remainder = g.vertex_mask() & !cycle.mask();
    let remainder_perfect =
        remainder.count_ones() % 2 == 0 && 2 * beta_mask(g.adjacency_masks(), remainder) == remainder.count_ones() as usize;
    let value = match dc.class {
        UnicyclicClass::U1 => perfect,
        UnicyclicClass::U2 => cycle.is_oddly_oriented() && remainder_perfect,
    };
    Ok(NonsingularVerdict {
        value,
        class: dc.class,
        has_perfect_matching: perfect,
        cycle,
        remainder_has_perfect_matching: remainder_perfect,
    })
}

/// Whether the determinant of `S(g)` is non-zero.
pub fn is_nonsingular(g: &OrientedGraph) -> bool {
    !determinant_exact(&skew_adjacency(g)).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRankAccount {
    pub class: UnicyclicClass,
    pub cycle: CycleData,
    /// Rank collected by the δ-steps.
    pub accumulated: usize,
    /// Rank of what the δ-steps leave: `0` in `U1`, `sr(C)` in `U2`.
    pub terminal_rank: usize,
    /// Upper bound from the class, order, girth and cycle orientation.
    pub bound: usize,
    pub actual: usize,
    /// Whether every δ-step order gives the same class.
    pub confluent: bool,
}

impl ClassRankAccount {
    pub fn exact(&self) -> bool {
        self.accumulated + self.terminal_rank == self.actual
    }

    pub fn within_bound(&self) -> bool {
        self.actual <= self.bound
    }
}

/// Rank accounting along the δ-class of a unicyclic graph.
///
/// The bound is `2 floor(n / 2)` in `U1` and `2 floor((n - k) / 2) + sr(C)`
/// in `U2`, which spells out to the six parity and orientation cases.
pub fn class_rank_account(g: &OrientedGraph) -> Result<ClassRankAccount> {
    let dc = delta_class(g)?;
    let cycle = unique_cycle(g)?;
    let n = g.order();
    let k = cycle.len();
    let (terminal_rank, bound) = match dc.class {
        UnicyclicClass::U1 => (0, path_skew_rank(n)),
        UnicyclicClass::U2 => {
            let c = cycle_skew_rank(&cycle);
            (c, path_skew_rank(n - k) + c)
        }
    };
    Ok(ClassRankAccount {
        class: dc.class,
        accumulated: dc.trace.accumulated,
        terminal_rank,
        bound,
        actual: skew_rank(g),
        confluent: dc.confluent,
        cycle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family, FamilySpec, OrientationRule};

    fn family(f: Family) -> OrientedGraph {
        generate_family(&FamilySpec::new(f, OrientationRule::UniformCyclic)).unwrap()
    }

    fn c4_pendant(evenly: bool) -> OrientedGraph {
        let arcs = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)];
        let g = OrientedGraph::new(5, arcs).unwrap();
        if evenly {
            g
        } else {
            g.with_reversed_edge(0, 1).unwrap()
        }
    }

    #[test]
    fn predictions() {
        let g1 = unicyclic_rank_predicted(&family(Family::G1)).unwrap();
        assert_eq!((g1.literal, g1.coefficient, g1.actual), (4, Some(4), 4));

        let p = unicyclic_rank_predicted(&c4_pendant(true)).unwrap();
        assert!(p.cycle.is_evenly_oriented());
        assert_eq!((p.literal, p.coefficient, p.actual), (4, Some(4), 4));

        let c4 = unicyclic_rank_predicted(&family(Family::Cycle { n: 4 })).unwrap();
        assert_eq!((c4.literal, c4.coefficient, c4.actual), (4, Some(2), 2));
        assert!(!c4.literal_holds() && c4.coefficient_holds());
    }

    #[test]
    fn girth_bound() {
        assert_eq!(min_girth_bound(7, 4), Ok(4));
        assert_eq!(min_girth_bound(6, 3), Ok(4));
        assert!(min_girth_bound(4, 4).is_err());
        assert!(min_girth_bound(5, 2).is_err());
        for seed in 0..16 {
            let h = generate_family(&FamilySpec::new(
                Family::Hnk { n: 7, k: 4 },
                OrientationRule::SeedRandom(seed),
            ))
            .unwrap();
            assert_eq!(skew_rank(&h), 4);
        }
    }

    #[test]
    fn decompositions() {
        let g1 = pendant_tree_decompose(&family(Family::G1)).unwrap();
        assert_eq!(g1.case, DecompositionCase::SaturatedRoot { root: 0 });
        assert_eq!(g1.parts, (2, 2));
        assert!(g1.identity_holds());

        let u = pendant_tree_decompose(&family(Family::UStar { n: 6, k: 4 })).unwrap();
        assert_eq!(u.case, DecompositionCase::CycleSplit);
        assert_eq!(u.parts, (2, 2));
        assert!(u.identity_holds());

        let c5 = pendant_tree_decompose(&family(Family::Cycle { n: 5 })).unwrap();
        assert_eq!(c5.case, DecompositionCase::CycleSplit);
        assert_eq!((c5.parts, c5.actual), ((4, 0), 4));
        assert!(c5.trees.iter().all(|t| t.vertices.len() == 1));
    }

    #[test]
    fn extremal_examples() {
        for seed in 0..8 {
            let rule = OrientationRule::SeedRandom(seed);
            let h = generate_family(&FamilySpec::new(Family::Hnk { n: 6, k: 4 }, rule.clone()))
                .unwrap();
            let e = extremal_min_classify(&h).unwrap();
            assert_eq!(e.case, Some(ExtremalCase::SaturatedStar { root: 0 }));

            let u = generate_family(&FamilySpec::new(Family::UStar { n: 6, k: 3 }, rule)).unwrap();
            let e = extremal_min_classify(&u).unwrap();
            assert!(matches!(e.case, Some(ExtremalCase::UStarOddGirth { center: 3, .. })));
        }
        let u4 = family(Family::UStar { n: 6, k: 4 });
        assert!(matches!(
            extremal_min_classify(&u4).unwrap().case,
            Some(ExtremalCase::UStarEvenlyOriented { .. })
        ));
        let odd = u4.with_reversed_edge(0, 1).unwrap();
        assert_eq!(skew_rank(&odd), 6);
        assert!(matches!(extremal_min_classify(&odd), Err(Error::Precondition(_))));
        assert!(extremal_min_classify(&family(Family::Cycle { n: 4 })).is_err());
    }

    #[test]
    fn nonsingular_examples() {
        let c4 = family(Family::Cycle { n: 4 });
        let odd = c4.with_reversed_edge(0, 1).unwrap();
        let v = nonsingular_unicyclic(&odd).unwrap();
        assert!(v.value && v.class == UnicyclicClass::U2);
        assert!(is_nonsingular(&odd));
        assert!(!nonsingular_unicyclic(&c4).unwrap().value);
        assert!(!is_nonsingular(&c4));
        let h = family(Family::Hnk { n: 6, k: 4 });
        let v = nonsingular_unicyclic(&h).unwrap();
        assert_eq!(v.class, UnicyclicClass::U1);
        assert_eq!(v.value, is_nonsingular(&h));
        assert_eq!(nonsingular_unicyclic(&family(Family::Cycle { n: 5 })), Err(Error::OddOrder(5)));
    }

    #[test]
    fn class_accounts() {
        let u = class_rank_account(&family(Family::UStar { n: 6, k: 4 })).unwrap();
        assert_eq!(u.class, UnicyclicClass::U2);
        assert!(u.exact() && u.within_bound());
        let h = class_rank_account(&family(Family::Hnk { n: 5, k: 4 })).unwrap();
        assert_eq!(h.class, UnicyclicClass::U1);
        assert_eq!((h.accumulated, h.actual, h.bound), (4, 4, 4));
    }
}
