//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the code paths it is used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use freiman_core::graph::{find_pairing, parse_graph};
use freiman_core::BipartiteGraph;

pub fn fixture(name: &str) -> BipartiteGraph {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    find_pairing(&parse_graph(&text).unwrap()).unwrap()
}

/// Minimal vertex covers by testing every subset of the `2n` vertices.
/// Each cover is returned as its 0/1 exponent vector `(x_1..x_n, y_1..y_n)`.
pub fn brute_covers(g: &BipartiteGraph) -> BTreeSet<Vec<u32>> {
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let covers = |m: u64| edges.iter().all(|&(i, j)| m >> (i - 1) & 1 == 1 || m >> (n + j - 1) & 1 == 1);
    (0..1u64 << (2 * n))
        .filter(|&m| covers(m) && (0..2 * n).all(|v| m >> v & 1 == 0 || !covers(m & !(1 << v))))
        .map(|m| (0..2 * n).map(|v| (m >> v & 1) as u32).collect())
        .collect()
}

/// Rank over Q by Gauss–Jordan elimination with exact rationals.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][c].clone();
        for v in m[rank].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Distinct sums of `k` rows chosen with repetition, by explicit
/// multiset enumeration.
pub fn brute_power(gens: &[Vec<u32>], k: usize) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    let mut pick = vec![0usize; k];
    loop {
        let len = gens[0].len();
        let sum = (0..len).map(|v| pick.iter().map(|&p| gens[p][v]).sum()).collect();
        out.insert(sum);
        // next non-decreasing index tuple
        let mut pos = k;
        while pos > 0 && pick[pos - 1] == gens.len() - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return out;
        }
        pick[pos - 1] += 1;
        let v = pick[pos - 1];
        for p in pick.iter_mut().skip(pos) {
            *p = v;
        }
    }
}

/// Down-closed subsets of the relation `leq` by checking every subset.
pub fn brute_down_sets(n: usize, leq: impl Fn(usize, usize) -> bool) -> BTreeSet<u64> {
    (0..1u64 << n)
        .filter(|&s| {
            (1..=n).all(|p| s >> (p - 1) & 1 == 0 || (1..=n).all(|q| !leq(q, p) || s >> (q - 1) & 1 == 1))
        })
        .collect()
}

/// Every perfect matching as a permutation `sigma` with `x_i – y_{sigma[i-1]}`.
pub fn perfect_matchings(g: &BipartiteGraph) -> Vec<Vec<usize>> {
    fn go(g: &BipartiteGraph, i: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i > g.n() {
            out.push(cur.clone());
            return;
        }
        for j in 1..=g.n() {
            if !used[j] && g.has_edge(i, j) {
                used[j] = true;
                cur.push(j);
                go(g, i + 1, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(g, 1, &mut vec![false; g.n() + 1], &mut Vec::new(), &mut out);
    out
}

/// Relabels `y_{sigma[i-1]}` as `y_i`.
pub fn relabel(g: &BipartiteGraph, sigma: &[usize]) -> BipartiteGraph {
    let mut inv = vec![0; g.n() + 1];
    for (i, &j) in sigma.iter().enumerate() {
        inv[j] = i + 1;
    }
    BipartiteGraph::new(g.n(), g.edges().map(|(i, j)| (i, inv[j]))).unwrap()
}

/// Direct Freiman numbers `(mu, mu2, ell, deficiency)` from the oracles.
pub fn brute_freiman(g: &BipartiteGraph) -> (usize, usize, usize, i64) {
    let gens: Vec<Vec<u32>> = brute_covers(g).into_iter().collect();
    let mu = gens.len();
    let mu2 = brute_power(&gens, 2).len();
    let rows: Vec<Vec<i64>> = gens.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
    let ell = rational_rank(&rows);
    let bound = (ell * mu) as i64 - (ell * (ell - 1) / 2) as i64;
    (mu, mu2, ell, mu2 as i64 - bound)
}

/// Connected unmixed graphs with `n ≤ max_n`, unmixedness decided by
/// comparing cover sizes.
pub fn connected_unmixed_corpus(max_n: usize) -> Vec<BipartiteGraph> {
    freiman_core::graph::enumerate_graphs(max_n)
        .unwrap()
        .filter(freiman_core::graph::is_connected)
        .filter(|g| brute_covers(g).iter().all(|c| c.iter().sum::<u32>() as usize == g.n()))
        .collect()
}
