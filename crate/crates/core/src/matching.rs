//! Matching number, matching counts, and saturated vertices of the
//! underlying graph.
//!
//! Everything is exhaustive recursion over vertex subsets: take the lowest
//! remaining vertex and either leave it unmatched or match it to one of its
//! remaining neighbours. Subsets of ten or more vertices are memoised.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;
use crate::graph::{bit, bits, OrientedGraph, Vertex};

const MEMO_MIN: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingInfo {
    /// Size of a maximum matching.
    pub beta: usize,
    /// `counts[i]` is the number of matchings with `i` edges, for
    /// `i = 0..=beta`.
    pub counts: Vec<u128>,
}

impl MatchingInfo {
    pub fn count(&self, i: usize) -> u128 {
        self.counts.get(i).copied().unwrap_or(0)
    }
}

pub(crate) fn beta_mask(adj: &[u64], mask: u64) -> usize {
    let mut memo = HashMap::new();
    beta_rec(adj, mask, &mut memo)
}

fn beta_rec(adj: &[u64], mut mask: u64, memo: &mut HashMap<u64, usize>) -> usize {
    // Strip isolated vertices, and match pendant vertices greedily: some
    // maximum matching always contains a pendant edge.
    let mut forced = 0;
    loop {
        let mut changed = false;
        for v in bits(mask) {
            if mask & bit(v) == 0 {
                continue;
            }
            let nb = adj[v] & mask;
            match nb.count_ones() {
                0 => {
                    mask &= !bit(v);
                    changed = true;
                }
                1 => {
                    mask &= !(bit(v) | nb);
                    forced += 1;
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    if mask == 0 {
        return forced;
    }
    let use_memo = mask.count_ones() >= MEMO_MIN;
    if use_memo {
        if let Some(&b) = memo.get(&mask) {
            return forced + b;
        }
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !bit(v);
    let mut best = beta_rec(adj, rest, memo);
    let cap = (rest.count_ones() as usize).div_ceil(2);
    for u in bits(adj[v] & rest) {
        if best == cap {
            break;
        }
        best = best.max(1 + beta_rec(adj, rest & !bit(u), memo));
    }
    if use_memo {
        memo.insert(mask, best);
    }
    forced + best
}

/// Matching generating polynomial of the subgraph induced by `mask`:
/// entry `i` counts `i`-edge matchings.
pub(crate) fn matching_counts_mask(adj: &[u64], mask: u64) -> Vec<u128> {
    let mut memo = HashMap::new();
    counts_rec(adj, mask, &mut memo)
}

fn counts_rec(adj: &[u64], mask: u64, memo: &mut HashMap<u64, Vec<u128>>) -> Vec<u128> {
    if mask == 0 {
        return vec![1];
    }
    let use_memo = mask.count_ones() >= MEMO_MIN;
    if use_memo {
        if let Some(c) = memo.get(&mask) {
            return c.clone();
        }
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !bit(v);
    let mut total = counts_rec(adj, rest, memo);
    for u in bits(adj[v] & rest) {
        let sub = counts_rec(adj, rest & !bit(u), memo);
        if total.len() < sub.len() + 1 {
            total.resize(sub.len() + 1, 0);
        }
        for (i, c) in sub.into_iter().enumerate() {
            total[i + 1] = total[i + 1].checked_add(c).expect("matching count overflow");
        }
    }
    while total.len() > 1 && total.last() == Some(&0) {
        total.pop();
    }
    if use_memo {
        memo.insert(mask, total.clone());
    }
    total
}

pub fn matching_number(g: &OrientedGraph) -> usize {
    beta_mask(g.adjacency_masks(), g.vertex_mask())
}

pub fn matching_info(g: &OrientedGraph) -> MatchingInfo {
    let counts = matching_counts_mask(g.adjacency_masks(), g.vertex_mask());
    MatchingInfo {
        beta: counts.len() - 1,
        counts,
    }
}

/// Number of matchings with exactly `i` edges.
pub fn count_matchings(g: &OrientedGraph, i: usize) -> u128 {
    matching_info(g).count(i)
}

/// Whether every maximum matching covers `v`, decided through
/// `beta(g - v) = beta(g) - 1`.
pub fn is_saturated(g: &OrientedGraph, v: Vertex) -> Result<bool> {
    g.check_vertex(v)?;
    let adj = g.adjacency_masks();
    let all = g.vertex_mask();
    Ok(beta_mask(adj, all & !bit(v)) + 1 == beta_mask(adj, all))
}

pub fn has_perfect_matching(g: &OrientedGraph) -> bool {
    g.order() % 2 == 0 && 2 * matching_number(g) == g.order()
}
