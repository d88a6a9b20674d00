use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{OrientedGraph, Vertex};
use crate::error::{Error, Result};

/// Named underlying graphs.
///
/// Vertex layouts are fixed so that examples and tests can refer to labels:
/// cycles occupy `0..k` in cyclic order, `Hnk` hangs its pendants off vertex
/// `0`, and `UStar` bridges cycle vertex `0` to the star centre `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    /// Star of order `n`: centre `0` and leaves `1..n`.
    Star { n: usize },
    /// Parts are numbered consecutively, first part first.
    CompleteMultipartite { parts: Vec<usize> },
    /// Cycle `C_k` with `n - k` pendant edges at vertex `0`.
    Hnk { n: usize, k: usize },
    /// Cycle `C_k` joined by one edge to the centre of a star of order
    /// `n - k`.
    UStar { n: usize, k: usize },
    /// Triangle `0 1 2` with a pendant vertex `3` at `0`.
    G1,
    /// Parts `{0}`, `{1}`, `{2, 3}`.
    K112,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrientationRule {
    /// Cycle edges follow the cycle order; every other edge runs from the
    /// smaller label to the larger.
    UniformCyclic,
    /// Every edge runs from the smaller label to the larger, so in a
    /// complete multipartite graph every arc leaves the earlier part.
    AllFromFirstPart,
    /// One arc per underlying edge, given explicitly.
    Explicit(Vec<(Vertex, Vertex)>),
    /// Each edge oriented by a fair coin from a seeded generator.
    SeedRandom(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub orientation: OrientationRule,
}

impl FamilySpec {
    pub fn new(family: Family, orientation: OrientationRule) -> Self {
        Self {
            family,
            orientation,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match &self.family {
            Family::Path { n } if *n == 0 => bad("a path needs at least one vertex".into()),
            Family::Cycle { n } if *n < 3 => bad(format!("cycle order {n} is below 3")),
            Family::Star { n } if *n < 2 => bad(format!("star order {n} is below 2")),
            Family::CompleteMultipartite { parts } if parts.is_empty() || parts.contains(&0) => {
                bad("complete multipartite parts must be non-empty".into())
            }
            Family::Hnk { n, k } | Family::UStar { n, k } if !(*k >= 3 && n > k) => {
                bad(format!("need n > k >= 3, got n = {n}, k = {k}"))
            }
            _ => Ok(()),
        }?;
        let n = self.order();
        if n > OrientedGraph::MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        match &self.family {
            Family::Path { n }
            | Family::Cycle { n }
            | Family::Star { n }
            | Family::Hnk { n, .. }
            | Family::UStar { n, .. } => *n,
            Family::CompleteMultipartite { parts } => parts.iter().sum(),
            Family::G1 | Family::K112 => 4,
        }
    }

    /// The underlying edges, each written in its `UniformCyclic` direction.
    fn base_arcs(&self) -> Vec<(Vertex, Vertex)> {
        let cycle = |k: usize| (0..k).map(move |i| (i, (i + 1) % k));
        match &self.family {
            Family::Path { n } => (1..*n).map(|i| (i - 1, i)).collect(),
            Family::Cycle { n } => cycle(*n).collect(),
            Family::Star { n } => (1..*n).map(|i| (0, i)).collect(),
            Family::CompleteMultipartite { parts } => {
                let mut starts = Vec::with_capacity(parts.len());
                let mut acc = 0;
                for &p in parts {
                    starts.push(acc);
                    acc += p;
                }
                let mut arcs = Vec::new();
                for (i, (&si, &pi)) in starts.iter().zip(parts).enumerate() {
                    for (&sj, &pj) in starts.iter().zip(parts).skip(i + 1) {
                        for u in si..si + pi {
                            arcs.extend((sj..sj + pj).map(|v| (u, v)));
                        }
                    }
                }
                arcs
            }
            Family::Hnk { n, k } => cycle(*k).chain((*k..*n).map(|v| (0, v))).collect(),
            Family::UStar { n, k } => cycle(*k)
                .chain(std::iter::once((0, *k)))
                .chain((*k + 1..*n).map(|v| (*k, v)))
                .collect(),
            Family::G1 => vec![(0, 1), (1, 2), (2, 0), (0, 3)],
            Family::K112 => vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
        }
    }
}

/// Builds the named graph with the requested orientation.
pub fn generate_family(spec: &FamilySpec) -> Result<OrientedGraph> {
    spec.validate()?;
    let n = spec.order();
    let base = spec.base_arcs();
    let arcs: Vec<(Vertex, Vertex)> = match &spec.orientation {
        OrientationRule::UniformCyclic => base,
        OrientationRule::AllFromFirstPart => base
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect(),
        OrientationRule::SeedRandom(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            base.into_iter()
                .map(|(u, v)| if rng.gen_bool(0.5) { (u, v) } else { (v, u) })
                .collect()
        }
        OrientationRule::Explicit(given) => {
            let key = |&(u, v): &(Vertex, Vertex)| (u.min(v), u.max(v));
            let mut want: Vec<_> = base.iter().map(key).collect();
            let mut got: Vec<_> = given.iter().map(key).collect();
            want.sort_unstable();
            got.sort_unstable();
            if want != got {
                return Err(Error::InvalidParameter(
                    "explicit arcs must orient each edge of the family exactly once".into(),
                ));
            }
            given.clone()
        }
    };
    OrientedGraph::new(n, arcs)
}
