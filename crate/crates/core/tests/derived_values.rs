//! Worked examples whose expected values come from the brute-force oracles
//! in `common`, checked first against the oracle and then against the
//! library.

mod common;

use std::collections::BTreeSet;

use common::*;
use freiman_core::bits::IndexSet;
use freiman_core::classify::{self, BijectionCheck, KmmBlock, Verdict};
use freiman_core::covers::{self, GraphPosetError, Poset};
use freiman_core::ideal::{self, ExponentVector};
use freiman_core::{graph, BipartiteGraph};

fn set(items: &[usize]) -> IndexSet {
    items.iter().copied().collect()
}

fn cover_vectors(g: &BipartiteGraph) -> BTreeSet<Vec<u32>> {
    ideal::cover_ideal(g).unwrap().generators().iter().map(|e| e.as_slice().to_vec()).collect()
}

fn star() -> BipartiteGraph {
    BipartiteGraph::with_matching(4, [(1, 2), (1, 3), (1, 4)]).unwrap()
}

#[test]
fn k22_covers() {
    let k22 = BipartiteGraph::complete(2).unwrap();
    let oracle = brute_covers(&k22);
    let frozen: BTreeSet<Vec<u32>> = [vec![1, 1, 0, 0], vec![0, 0, 1, 1]].into();
    assert_eq!(oracle, frozen);
    assert_eq!(cover_vectors(&k22), frozen);
}

#[test]
fn path_covers() {
    let g = BipartiteGraph::with_matching(2, [(2, 1)]).unwrap();
    // {y1,y2}, {x2,y1}, {x1,x2}
    let frozen: BTreeSet<Vec<u32>> = [vec![0, 0, 1, 1], vec![0, 1, 1, 0], vec![1, 1, 0, 0]].into();
    assert_eq!(brute_covers(&g), frozen);
    assert_eq!(cover_vectors(&g), frozen);
    assert!(covers::is_unmixed(&g).unwrap().is_unmixed());
}

#[test]
fn missing_transitive_edge_is_mixed_for_every_matching() {
    let g = BipartiteGraph::with_matching(3, [(1, 2), (2, 3)]).unwrap();
    let sizes: BTreeSet<u32> = brute_covers(&g).iter().map(|c| c.iter().sum()).collect();
    assert_eq!(sizes, [3, 4].into());
    for sigma in perfect_matchings(&g) {
        assert!(!covers::is_unmixed_structural(&relabel(&g, &sigma)), "{sigma:?}");
    }
    assert!(!covers::is_unmixed_structural(&g));
    assert!(!covers::is_unmixed(&g).unwrap().is_unmixed());
}

#[test]
fn block4_lattice_and_poset() {
    let g = fixture("block4.graph");
    let oracle: BTreeSet<Vec<u32>> = brute_covers(&g);
    let x_parts: BTreeSet<IndexSet> =
        oracle.iter().map(|c| (1..=4).filter(|&i| c[i - 1] == 1).collect()).collect();
    let frozen: BTreeSet<IndexSet> = [set(&[]), set(&[1]), set(&[1, 2, 4]), set(&[1, 2, 3, 4])].into();
    assert_eq!(x_parts, frozen);
    let lattice = covers::cover_lattice(&g).unwrap();
    assert_eq!(lattice.members.iter().copied().collect::<BTreeSet<_>>(), frozen);
    assert!(g.has_edge(2, 4) && g.has_edge(4, 2));
    assert_eq!(covers::poset_from_graph(&g), Err(GraphPosetError::NotAPoset(2, 4)));
}

#[test]
fn star_poset_ideals() {
    let p = Poset::generated_by(4, [(1, 2), (1, 3), (1, 4)]).unwrap();
    let oracle = brute_down_sets(4, |a, b| a == b || (a == 1 && b > 1));
    assert_eq!(oracle.len(), 9);
    let got: BTreeSet<u64> = covers::poset_ideals(&p).unwrap().iter().map(|s| s.mask()).collect();
    assert_eq!(got, oracle);
}

#[test]
fn star_freiman_numbers() {
    let g = star();
    assert_eq!(brute_freiman(&g), (9, 36, 5, 1));
    let r = freiman_core::freiman_report(&ideal::cover_ideal(&g).unwrap()).unwrap();
    assert_eq!((r.mu, r.mu2, r.ell, r.deficiency), (9, 36, 5, 1));
    assert_eq!(classify::classify_structural(&g).unwrap().verdict, Verdict::NotFreiman);
}

#[test]
fn chain_hibi_spread() {
    for t in 1..=6 {
        let hibi = ideal::hibi_ideal(&Poset::chain(t)).unwrap();
        assert_eq!(rational_rank(&hibi.exponent_matrix()), t + 1);
        assert_eq!(ideal::analytic_spread(&hibi).unwrap(), t + 1);
    }
}

#[test]
fn g1_cube() {
    let g = fixture("g1.graph");
    let gens: Vec<Vec<u32>> = brute_covers(&g).into_iter().collect();
    let oracle = brute_power(&gens, 3);
    assert_eq!(oracle.len(), 10);
    let cube = ideal::power(&ideal::cover_ideal(&g).unwrap(), 3).unwrap();
    let got: BTreeSet<Vec<u32>> = cube.generators().iter().map(|e| e.as_slice().to_vec()).collect();
    assert_eq!(got, oracle);
    assert_eq!(ideal::mu_power_expected(3, 3, 3), oracle.len() as i128);
}

#[test]
fn self_product_is_square() {
    let g = star();
    let i = ideal::cover_ideal(&g).unwrap();
    let gens: Vec<Vec<u32>> = brute_covers(&g).into_iter().collect();
    let oracle = brute_power(&gens, 2);
    let prod: BTreeSet<Vec<u32>> =
        ideal::product(&i, &i).unwrap().generators().iter().map(|e| e.as_slice().to_vec()).collect();
    assert_eq!(prod, oracle);
}

fn is_chain_after_deleting(n: usize, leq: impl Fn(usize, usize) -> bool, d: usize) -> bool {
    (1..=n).filter(|&a| a != d).all(|a| (1..=n).filter(|&b| b != d).all(|b| leq(a, b) || leq(b, a)))
}

#[test]
fn vee_is_almost_complete() {
    let g = BipartiteGraph::with_matching(3, [(1, 2), (1, 3)]).unwrap();
    let works: Vec<usize> = (1..=3).filter(|&d| is_chain_after_deleting(3, |a, b| g.has_edge(a, b), d)).collect();
    assert_eq!(works, vec![2, 3]);
    let w = classify::is_almost_complete_cm(&g).unwrap().unwrap();
    assert!(works.contains(&w.deleted));
}

#[test]
fn star_is_not_almost_complete() {
    let g = star();
    assert!((1..=4).all(|d| !is_chain_after_deleting(4, |a, b| g.has_edge(a, b), d)));
    assert_eq!(classify::is_almost_complete_cm(&g).unwrap(), None);
    assert_eq!(classify::is_complete_cm(&g), None);
}

/// Maximal index sets (size ≥ 2) inducing complete bipartite graphs, by
/// checking every subset.
fn brute_blocks(g: &BipartiteGraph) -> Vec<IndexSet> {
    let n = g.n();
    let complete = |s: u64| {
        (1..=n).all(|i| s >> (i - 1) & 1 == 0 || (1..=n).all(|j| s >> (j - 1) & 1 == 0 || g.has_edge(i, j)))
    };
    let cands: Vec<u64> = (0..1u64 << n).filter(|&s| s.count_ones() >= 2 && complete(s)).collect();
    cands
        .iter()
        .filter(|&&s| !cands.iter().any(|&t| t != s && s & !t == 0))
        .map(|&s| IndexSet::from_mask(s))
        .collect()
}

#[test]
fn block4_block_and_reduction() {
    let g = fixture("block4.graph");
    assert_eq!(brute_blocks(&g), vec![set(&[2, 4])]);
    let blocks = classify::find_kmm_blocks(&g).unwrap();
    assert_eq!(blocks, vec![KmmBlock { indices: set(&[2, 4]) }]);
    // by set restriction: keep pairs 1, 3, 4 and relabel 1->1, 3->2, 4->3
    let expected = BipartiteGraph::new(
        3,
        g.edges().filter(|&(i, j)| i != 2 && j != 2).map(|(i, j)| {
            let r = |v: usize| [0, 1, 0, 2, 3][v];
            (r(i), r(j))
        }),
    )
    .unwrap();
    let reduced = classify::reduce_graph(&g, &blocks);
    assert_eq!(reduced.graph, expected);
    assert_eq!(classify::is_complete_cm(&reduced.graph), Some(vec![1, 3, 2]));
    assert_eq!(graph::induced_subgraph(&g, set(&[1, 3, 4])).unwrap(), expected);
}

#[test]
fn block4_classification_matches_direct_route() {
    let g = fixture("block4.graph");
    assert_eq!(brute_freiman(&g), (4, 10, 4, 0));
    let c = classify::classify_structural(&g).unwrap();
    assert!(c.verdict.is_freiman());
    assert_eq!(c.reduced_graph.n(), 3);
}

#[test]
fn k22_classification() {
    let g = BipartiteGraph::complete(2).unwrap();
    // mu = 2, mu2 = 3, ell = 2, bound = 2*2 - 1 = 3
    assert_eq!(brute_freiman(&g), (2, 3, 2, 0));
    let r = freiman_core::freiman_report(&ideal::cover_ideal(&g).unwrap()).unwrap();
    assert_eq!((r.mu, r.mu2, r.ell, r.bound), (2, 3, 2, 3));
    assert_eq!(classify::classify_structural(&g).unwrap().verdict, Verdict::ReducesToAlmostCompleteCM);
}

#[test]
fn block4_bijection_sizes() {
    let g = fixture("block4.graph");
    let h = classify::reduce_graph(&g, &[KmmBlock { indices: set(&[2, 4]) }]).graph;
    assert_eq!(brute_covers(&g).len(), 4);
    assert_eq!(brute_covers(&h).len(), 4);
    let check = classify::verify_cover_bijection(&g, &KmmBlock { indices: set(&[2, 4]) }).unwrap();
    assert_eq!(check, BijectionCheck::Holds { covers: 4 });
}

#[test]
fn k22_and_k33_bijections() {
    for m in [2, 3] {
        let g = BipartiteGraph::complete(m).unwrap();
        assert_eq!(brute_covers(&g).len(), 2);
        let block = KmmBlock { indices: IndexSet::full(m) };
        assert_eq!(classify::verify_cover_bijection(&g, &block).unwrap(), BijectionCheck::Holds { covers: 2 });
    }
}

#[test]
fn hibi_of_chain_two_is_cover_ideal_of_g1() {
    let hibi = ideal::hibi_ideal(&Poset::chain(2)).unwrap();
    let expected: Vec<ExponentVector> =
        [[1, 1, 0, 0], [1, 0, 0, 1], [0, 0, 1, 1]].iter().map(|v| ExponentVector::new(v.to_vec())).collect();
    assert_eq!(hibi.generators(), expected.as_slice());
    assert_eq!(hibi, ideal::cover_ideal(&fixture("g1.graph")).unwrap());
}
