//! Library results against brute-force oracles that share no code with it.

use num_bigint::BigInt;
use proptest::prelude::*;
use skewrank::graph::{to_sgr, parse_sgr};
use skewrank::linalg::{char_poly_exact, determinant_exact, rank_exact, skew_adjacency};
use skewrank::matching::{count_matchings, matching_number};
use skewrank::spectra::coefficients_comb;
use skewrank::{skew_rank, OrientedGraph};

fn dense(g: &OrientedGraph) -> Vec<Vec<i64>> {
    let n = g.order();
    let mut m = vec![vec![0i64; n]; n];
    for &(u, v) in g.arcs() {
        m[u][v] = 1;
        m[v][u] = -1;
    }
    m
}

/// Laplace expansion along the first row.
fn laplace(m: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> i64 {
    if rows.is_empty() {
        return 1;
    }
    let mut total = 0;
    for (j, &c) in cols.iter().enumerate() {
        let x = m[rows[0]][c];
        if x == 0 {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&d| d != c).collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * x * laplace(m, &rows[1..], &rest);
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
        .collect()
}

/// Largest nonvanishing minor.
fn minor_rank(g: &OrientedGraph) -> usize {
    let m = dense(g);
    let n = g.order();
    (1..=n)
        .rev()
        .find(|&k| {
            let ss = subsets(n, k);
            ss.iter().any(|r| ss.iter().any(|c| laplace(&m, r, c) != 0))
        })
        .unwrap_or(0)
}

/// `a_k` is the sum of the principal `k x k` minors.
fn principal_minor_sums(g: &OrientedGraph) -> Vec<BigInt> {
    let m = dense(g);
    let n = g.order();
    (0..=n)
        .map(|k| BigInt::from(subsets(n, k).iter().map(|s| laplace(&m, s, s)).sum::<i64>()))
        .collect()
}

fn brute_matchings(g: &OrientedGraph) -> Vec<u128> {
    let edges = g.edges();
    let mut counts = vec![0u128; g.order() / 2 + 1];
    for s in 0u64..1 << edges.len() {
        let mut used = 0u64;
        let mut ok = true;
        for (j, &(u, v)) in edges.iter().enumerate() {
            if s >> j & 1 == 1 {
                if used & (1 << u | 1 << v) != 0 {
                    ok = false;
                    break;
                }
                used |= 1 << u | 1 << v;
            }
        }
        if ok {
            counts[s.count_ones() as usize] += 1;
        }
    }
    counts
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = OrientedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(0u8..3, pairs).prop_map(move |choice| {
            let mut arcs = Vec::new();
            let mut j = 0;
            for u in 0..n {
                for v in u + 1..n {
                    match choice[j] {
                        1 => arcs.push((u, v)),
                        2 => arcs.push((v, u)),
                        _ => {}
                    }
                    j += 1;
                }
            }
            OrientedGraph::new(n, arcs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn rank_matches_minor_oracle(g in arb_graph(7)) {
        let r = skew_rank(&g);
        prop_assert_eq!(r, minor_rank(&g));
        prop_assert_eq!(r % 2, 0);
        prop_assert!(r <= 2 * matching_number(&g));
    }

    #[test]
    fn charpoly_matches_principal_minors(g in arb_graph(7)) {
        let oracle = principal_minor_sums(&g);
        let exact = char_poly_exact(&skew_adjacency(&g));
        prop_assert_eq!(exact.coefficients(), &oracle[..]);
        prop_assert_eq!(coefficients_comb(&g), oracle);
    }

    #[test]
    fn determinant_is_laplace_and_square(g in arb_graph(7)) {
        let m = dense(&g);
        let all: Vec<usize> = (0..g.order()).collect();
        let det = laplace(&m, &all, &all);
        prop_assert_eq!(determinant_exact(&skew_adjacency(&g)), BigInt::from(det));
        let root = (det as f64).sqrt().round() as i64;
        prop_assert_eq!(root * root, det);
    }

    #[test]
    fn matching_counts(g in arb_graph(7)) {
        let counts = brute_matchings(&g);
        let beta = counts.iter().rposition(|&c| c > 0).unwrap();
        prop_assert_eq!(matching_number(&g), beta);
        for (i, &c) in counts.iter().enumerate() {
            prop_assert_eq!(count_matchings(&g, i), c);
        }
    }

    #[test]
    fn rank_is_invariant(g in arb_graph(8), signs in prop::collection::vec(any::<bool>(), 8)) {
        let r = skew_rank(&g);
        prop_assert_eq!(skew_rank(&g.reversed()), r);
        let s: Vec<i8> = signs[..g.order()].iter().map(|&b| if b { -1 } else { 1 }).collect();
        let switched = skew_adjacency(&g).switched(&s).unwrap();
        prop_assert_eq!(rank_exact(&switched), r);
        prop_assert_eq!(rank_exact(&skew_adjacency(&g).negated()), r);
    }

    #[test]
    fn sgr_round_trip(g in arb_graph(9)) {
        let text = to_sgr(&g);
        let back = parse_sgr(&text).unwrap();
        prop_assert_eq!(to_sgr(&back), text);
        prop_assert_eq!(back, g);
    }
}
