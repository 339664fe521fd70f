//! Structural recognition of Freiman cover ideals.
//!
//! For a connected unmixed graph in matched labeling the relation
//! `i ≤ j ⇔ {x_i, y_j} ∈ E` is a preorder. Its nontrivial equivalence
//! classes are exactly the maximal matched `K_{m,m}` blocks. Collapsing each
//! block to its largest index leaves a Cohen–Macaulay graph, i.e. a genuine
//! poset, and the cover ideal is Freiman iff that poset becomes a chain
//! after removing a single element.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::IndexSet;
use crate::cliques::maximal_cliques;
use crate::covers::{self, cover_from_mask, cover_to_mask, poset_from_graph, CoverError, MinimalCover};
use crate::graph::{induced_subgraph, is_connected, BipartiteGraph};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not unmixed: ({0}, {1}) and ({1}, {2}) are edges but ({0}, {2}) is not")]
    NotUnmixed(usize, usize, usize),
    #[error("graph is not Cohen-Macaulay: pairs {0} and {1} induce K_2,2")]
    NotCohenMacaulay(usize, usize),
    #[error("maximal blocks {0} and {1} overlap")]
    OverlappingBlocks(IndexSet, IndexSet),
    #[error("{0} is not a matched K_m,m block of this graph")]
    InvalidBlock(IndexSet),
    #[error("reduced graph is not connected, unmixed and C-M: {0}")]
    ReductionBroken(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Covers(#[from] CoverError),
}

/// A maximal set of pair indices (at least two) inducing a complete
/// bipartite subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KmmBlock {
    pub indices: IndexSet,
}

impl KmmBlock {
    pub fn m(&self) -> usize {
        self.indices.len()
    }

    /// The pair that survives reduction: the largest index.
    pub fn representative(&self) -> usize {
        self.indices.max().expect("blocks are non-empty")
    }

    fn is_complete_in(&self, g: &BipartiteGraph) -> bool {
        self.m() >= 2 && self.indices.iter().all(|i| self.indices.is_subset(g.neighbors_of_x(i)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// Freiman: the graph itself is almost complete C-M.
    AlmostCompleteCM,
    /// Freiman: the graph has `K_{m,m}` blocks and their reduction is
    /// almost complete C-M.
    ReducesToAlmostCompleteCM,
    NotFreiman,
}

impl Verdict {
    pub fn is_freiman(self) -> bool {
        self != Verdict::NotFreiman
    }
}

/// Certificate that a graph is almost complete C-M: removing pair
/// `deleted` leaves the chain `order` (smallest element first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainWitness {
    pub deleted: usize,
    pub order: Vec<usize>,
}

impl ChainWitness {
    /// Checks the certificate against `g` directly: every index except
    /// `deleted` appears once in `order`, and `{x_a, y_b}` is an edge
    /// exactly when `a` comes no later than `b`.
    pub fn validates(&self, g: &BipartiteGraph) -> bool {
        let expected: IndexSet = (1..=g.n()).filter(|&i| i != self.deleted).collect();
        let listed: IndexSet = self.order.iter().copied().collect();
        if self.order.len() != expected.len() || listed != expected || !(1..=g.n()).contains(&self.deleted) {
            return false;
        }
        self.order
            .iter()
            .enumerate()
            .all(|(s, &a)| self.order.iter().enumerate().all(|(t, &b)| g.has_edge(a, b) == (s <= t)))
    }
}

/// Outcome of the structural classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub blocks: Vec<KmmBlock>,
    /// In the reduced graph's indices.
    pub chain_witness: Option<ChainWitness>,
    pub reduced_graph: BipartiteGraph,
    /// `kept[r - 1]` is the original index of reduced pair `r`.
    pub kept: Vec<usize>,
}

/// Outcome of [`is_cm`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CmStatus {
    /// `labeling[k]` is the original index given new label `k + 1`; in the
    /// new labeling every edge `{x_i, y_j}` has `i ≤ j`.
    CohenMacaulay { labeling: Vec<usize> },
    NotCohenMacaulay { witness: (usize, usize) },
}

impl CmStatus {
    pub fn is_cm(&self) -> bool {
        matches!(self, CmStatus::CohenMacaulay { .. })
    }
}

fn require_connected_unmixed(g: &BipartiteGraph) -> Result<(), ClassifyError> {
    if !is_connected(g) {
        return Err(ClassifyError::NotConnected);
    }
    if let Some((i, j, k)) = covers::transitivity_violation(g) {
        return Err(ClassifyError::NotUnmixed(i, j, k));
    }
    Ok(())
}

/// A labeling with `{x_i, y_i} ∈ E`, `{x_i, y_j} ∈ E ⇒ i ≤ j`, and
/// `{x_i, y_j}, {x_j, y_k} ∈ E ⇒ {x_i, y_k} ∈ E` for `i < j < k`, if one
/// exists. Labels follow a topological order of the edge relation.
pub fn cm_labeling(g: &BipartiteGraph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut indegree: Vec<usize> = (1..=n).map(|j| g.neighbors_of_y(j).len() - 1).collect();
    let mut placed = IndexSet::empty();
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (1..=n).find(|&i| !placed.contains(i) && indegree[i - 1] == 0)?;
        placed.insert(next);
        order.push(next);
        for j in g.neighbors_of_x(next) {
            if j != next {
                indegree[j - 1] -= 1;
            }
        }
    }
    let mut label = vec![0; n + 1];
    for (k, &i) in order.iter().enumerate() {
        label[i] = k + 1;
    }
    let edge = |a: usize, b: usize| g.has_edge(order[a - 1], order[b - 1]);
    let matched = (1..=n).all(|i| edge(i, i));
    let upward = g.edges().all(|(i, j)| label[i] <= label[j]);
    let closed = (1..=n).all(|i| {
        (i + 1..=n).all(|j| (j + 1..=n).all(|k| !(edge(i, j) && edge(j, k)) || edge(i, k)))
    });
    (matched && upward && closed).then_some(order)
}

/// Cohen–Macaulayness of a connected unmixed graph: no two pairs induce a
/// `K_{2,2}`. The answer is cross-checked against [`cm_labeling`].
pub fn is_cm(g: &BipartiteGraph) -> Result<CmStatus, ClassifyError> {
    require_connected_unmixed(g)?;
    let k22 = covers::matched_k22(g);
    let labeling = cm_labeling(g);
    match (k22, labeling) {
        (None, Some(labeling)) => Ok(CmStatus::CohenMacaulay { labeling }),
        (Some(witness), None) => Ok(CmStatus::NotCohenMacaulay { witness }),
        (k22, labeling) => Err(ClassifyError::Inconsistent(format!(
            "K_2,2 witness {k22:?} but C-M labeling {labeling:?}"
        ))),
    }
}

/// The total order certifying that `g` is complete C-M, if it is.
pub fn is_complete_cm(g: &BipartiteGraph) -> Option<Vec<usize>> {
    let p = poset_from_graph(g).ok()?;
    covers::is_chain(&p).then(|| p.linear_extension())
}

/// Whether deleting one pair leaves a complete C-M graph. Requires a
/// connected C-M graph.
///
/// A complete C-M graph reports its top element. Otherwise the deleted
/// element must lie in every incomparable pair, so only the two members of
/// the first such pair are candidates.
pub fn is_almost_complete_cm(g: &BipartiteGraph) -> Result<Option<ChainWitness>, ClassifyError> {
    require_connected_unmixed(g)?;
    let p = poset_from_graph(g).map_err(|e| match e {
        covers::GraphPosetError::NotAPoset(i, j) => ClassifyError::NotCohenMacaulay(i, j),
        covers::GraphPosetError::NotTransitive(i, j, k) => ClassifyError::NotUnmixed(i, j, k),
    })?;
    let pairs = p.incomparable_pairs();
    let candidates = match pairs.first() {
        None => vec![*p.linear_extension().last().expect("graphs have at least one pair")],
        Some(&(a, b)) => vec![a, b],
    };
    for deleted in candidates {
        if pairs.iter().all(|&(a, b)| a == deleted || b == deleted) {
            let order = p.linear_extension().into_iter().filter(|&i| i != deleted).collect();
            return Ok(Some(ChainWitness { deleted, order }));
        }
    }
    Ok(None)
}

/// All maximal matched `K_{m,m}` blocks (`m ≥ 2`), sorted, and checked to
/// be pairwise disjoint.
pub fn find_kmm_blocks(g: &BipartiteGraph) -> Result<Vec<KmmBlock>, ClassifyError> {
    let n = g.n();
    let mutual: Vec<u64> = (1..=n)
        .map(|i| {
            let mut s = g.neighbors_of_x(i).intersection(g.neighbors_of_y(i));
            s.remove(i);
            s.mask()
        })
        .collect();
    let blocks: Vec<KmmBlock> = maximal_cliques(&mutual, IndexSet::full(n).mask())
        .into_iter()
        .map(IndexSet::from_mask)
        .filter(|s| s.len() >= 2)
        .map(|indices| KmmBlock { indices })
        .collect();
    for (k, a) in blocks.iter().enumerate() {
        if let Some(b) = blocks[k + 1..].iter().find(|b| !a.indices.intersection(b.indices).is_empty()) {
            return Err(ClassifyError::OverlappingBlocks(a.indices, b.indices));
        }
    }
    Ok(blocks)
}

/// A reduced graph together with the original index of each kept pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub graph: BipartiteGraph,
    pub kept: Vec<usize>,
}

/// Deletes every pair of each block except its largest index.
pub fn reduce_graph(g: &BipartiteGraph, blocks: &[KmmBlock]) -> Reduction {
    let mut keep = IndexSet::full(g.n());
    for b in blocks {
        let mut gone = b.indices;
        gone.remove(b.representative());
        keep = keep.difference(gone);
    }
    let graph = induced_subgraph(g, keep).expect("each block keeps its representative");
    Reduction { graph, kept: keep.iter().collect() }
}

/// Structural Freiman classification of a connected unmixed graph.
pub fn classify_structural(g: &BipartiteGraph) -> Result<Classification, ClassifyError> {
    require_connected_unmixed(g)?;
    let blocks = find_kmm_blocks(g)?;
    let Reduction { graph: reduced, kept } = reduce_graph(g, &blocks);
    if !is_connected(&reduced) {
        return Err(ClassifyError::ReductionBroken("reduced graph is disconnected".into()));
    }
    if let Some(t) = covers::transitivity_violation(&reduced) {
        return Err(ClassifyError::ReductionBroken(format!("reduced graph is not unmixed at {t:?}")));
    }
    if let Some((i, j)) = covers::matched_k22(&reduced) {
        return Err(ClassifyError::ReductionBroken(format!("reduced pairs {i} and {j} still induce K_2,2")));
    }
    let chain_witness = is_almost_complete_cm(&reduced)?;
    let verdict = match (&chain_witness, blocks.is_empty()) {
        (None, _) => Verdict::NotFreiman,
        (Some(_), true) => Verdict::AlmostCompleteCM,
        (Some(_), false) => Verdict::ReducesToAlmostCompleteCM,
    };
    if let Some(w) = &chain_witness {
        if !w.validates(&reduced) {
            return Err(ClassifyError::Inconsistent(format!("chain witness {w:?} does not validate")));
        }
    }
    Ok(Classification { verdict, blocks, chain_witness, reduced_graph: reduced, kept })
}

/// Outcome of [`verify_cover_bijection`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BijectionCheck {
    Holds { covers: usize },
    /// A cover of `G` (in `G`'s indices) that is hit twice, hit although it
    /// is not a minimal cover, or not hit at all.
    Fails { counterexample: MinimalCover },
}

impl BijectionCheck {
    pub fn holds(&self) -> bool {
        matches!(self, BijectionCheck::Holds { .. })
    }
}

pub fn verify_cover_bijection(g: &BipartiteGraph, block: &KmmBlock) -> Result<BijectionCheck, ClassifyError> {
    verify_cover_bijection_with(g, block, &Limits::default())
}

/// Materializes `M(H)` for the single-block reduction `H` and `M(G)`, lifts
/// each `C ∈ M(H)` by adjoining the block's `x` vertices when
/// `x_{i_m} ∈ C` and its `y` vertices otherwise, and checks that the lift
/// is a bijection onto `M(G)`.
pub fn verify_cover_bijection_with(
    g: &BipartiteGraph,
    block: &KmmBlock,
    limits: &Limits,
) -> Result<BijectionCheck, ClassifyError> {
    if !block.is_complete_in(g) {
        return Err(ClassifyError::InvalidBlock(block.indices));
    }
    let n = g.n();
    let Reduction { graph: h, kept } = reduce_graph(g, std::slice::from_ref(block));
    let top = block.representative();
    let g_covers: HashSet<u64> =
        covers::minimal_vertex_covers_with(g, limits)?.iter().map(|c| cover_to_mask(n, c)).collect();
    let h_covers = covers::minimal_vertex_covers_with(&h, limits)?;
    let mut images = HashSet::with_capacity(h_covers.len());
    for c in &h_covers {
        let mut lifted = MinimalCover {
            x_part: c.x_part.iter().map(|r| kept[r - 1]).collect(),
            y_part: c.y_part.iter().map(|r| kept[r - 1]).collect(),
        };
        if lifted.x_part.contains(top) {
            lifted.x_part = lifted.x_part.union(block.indices);
        } else {
            lifted.y_part = lifted.y_part.union(block.indices);
        }
        let mask = cover_to_mask(n, &lifted);
        if !g_covers.contains(&mask) || !images.insert(mask) {
            return Ok(BijectionCheck::Fails { counterexample: lifted });
        }
    }
    if let Some(&missed) = g_covers.iter().filter(|m| !images.contains(m)).min() {
        return Ok(BijectionCheck::Fails { counterexample: cover_from_mask(n, missed) });
    }
    Ok(BijectionCheck::Holds { covers: h_covers.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[usize]) -> IndexSet {
        items.iter().copied().collect()
    }

    fn g1() -> BipartiteGraph {
        BipartiteGraph::with_matching(2, [(1, 2)]).unwrap()
    }

    fn block4() -> BipartiteGraph {
        BipartiteGraph::with_matching(4, [(1, 2), (2, 4), (4, 3), (1, 4), (2, 3), (1, 3), (4, 2)]).unwrap()
    }

    fn star() -> BipartiteGraph {
        BipartiteGraph::with_matching(4, [(1, 2), (1, 3), (1, 4)]).unwrap()
    }

    fn vee() -> BipartiteGraph {
        BipartiteGraph::with_matching(3, [(1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn cm_examples() {
        assert!(is_cm(&g1()).unwrap().is_cm());
        assert_eq!(
            is_cm(&BipartiteGraph::complete(2).unwrap()).unwrap(),
            CmStatus::NotCohenMacaulay { witness: (1, 2) }
        );
        assert_eq!(is_cm(&block4()).unwrap(), CmStatus::NotCohenMacaulay { witness: (2, 4) });
    }

    #[test]
    fn cm_labeling_sorts_upward() {
        // p3 < p1 < p2 in the original labels
        let g = BipartiteGraph::with_matching(3, [(3, 1), (3, 2), (1, 2)]).unwrap();
        assert_eq!(cm_labeling(&g), Some(vec![3, 1, 2]));
        assert_eq!(is_cm(&g).unwrap(), CmStatus::CohenMacaulay { labeling: vec![3, 1, 2] });
    }

    #[test]
    fn cm_requires_hypotheses() {
        let union = g1().disjoint_union(&g1()).unwrap();
        assert_eq!(is_cm(&union).unwrap_err(), ClassifyError::NotConnected);
        let mixed = BipartiteGraph::with_matching(3, [(1, 2), (2, 3)]).unwrap();
        assert_eq!(is_cm(&mixed).unwrap_err(), ClassifyError::NotUnmixed(1, 2, 3));
    }

    #[test]
    fn complete_cm_examples() {
        assert_eq!(is_complete_cm(&g1()), Some(vec![1, 2]));
        assert_eq!(is_complete_cm(&BipartiteGraph::chain(3).unwrap()), Some(vec![1, 2, 3]));
        assert_eq!(is_complete_cm(&star()), None);
        assert_eq!(is_complete_cm(&BipartiteGraph::complete(2).unwrap()), None);
    }

    #[test]
    fn almost_complete_examples() {
        let w = is_almost_complete_cm(&BipartiteGraph::chain(4).unwrap()).unwrap().unwrap();
        assert_eq!(w, ChainWitness { deleted: 4, order: vec![1, 2, 3] });
        let w = is_almost_complete_cm(&vee()).unwrap().unwrap();
        assert!(w.deleted == 2 || w.deleted == 3);
        assert!(w.validates(&vee()));
        assert_eq!(is_almost_complete_cm(&star()).unwrap(), None);
        let single = BipartiteGraph::new(1, [(1, 1)]).unwrap();
        assert_eq!(is_almost_complete_cm(&single).unwrap(), Some(ChainWitness { deleted: 1, order: vec![] }));
        assert_eq!(
            is_almost_complete_cm(&BipartiteGraph::complete(2).unwrap()).unwrap_err(),
            ClassifyError::NotCohenMacaulay(1, 2)
        );
    }

    #[test]
    fn witness_validation_rejects_wrong_orders() {
        let chain = BipartiteGraph::chain(3).unwrap();
        assert!(ChainWitness { deleted: 3, order: vec![1, 2] }.validates(&chain));
        assert!(!ChainWitness { deleted: 3, order: vec![2, 1] }.validates(&chain));
        assert!(!ChainWitness { deleted: 3, order: vec![1] }.validates(&chain));
        assert!(!ChainWitness { deleted: 4, order: vec![1, 2, 3] }.validates(&chain));
    }

    #[test]
    fn blocks() {
        assert_eq!(find_kmm_blocks(&block4()).unwrap(), vec![KmmBlock { indices: set(&[2, 4]) }]);
        assert!(find_kmm_blocks(&star()).unwrap().is_empty());
        assert_eq!(
            find_kmm_blocks(&BipartiteGraph::complete(3).unwrap()).unwrap(),
            vec![KmmBlock { indices: set(&[1, 2, 3]) }]
        );
    }

    #[test]
    fn overlapping_blocks_are_reported() {
        // 1~2 and 2~3 mutually adjacent, 1 and 3 not: not unmixed, two maximal blocks sharing 2
        let g = BipartiteGraph::with_matching(3, [(1, 2), (2, 1), (2, 3), (3, 2)]).unwrap();
        assert_eq!(find_kmm_blocks(&g).unwrap_err(), ClassifyError::OverlappingBlocks(set(&[1, 2]), set(&[2, 3])));
    }

    #[test]
    fn reductions() {
        let r = reduce_graph(&block4(), &[KmmBlock { indices: set(&[2, 4]) }]);
        assert_eq!(r.kept, vec![1, 3, 4]);
        assert!(is_complete_cm(&r.graph).is_some());
        assert_eq!(r.graph.edge_count(), 6);
        let k33 = BipartiteGraph::complete(3).unwrap();
        let r = reduce_graph(&k33, &find_kmm_blocks(&k33).unwrap());
        assert_eq!(r.kept, vec![3]);
        assert_eq!(r.graph.edges().collect::<Vec<_>>(), vec![(1, 1)]);
        let r = reduce_graph(&star(), &[]);
        assert_eq!(r.graph, star());
    }

    #[test]
    fn structural_verdicts() {
        let c = classify_structural(&block4()).unwrap();
        assert_eq!(c.verdict, Verdict::ReducesToAlmostCompleteCM);
        assert_eq!(c.kept, vec![1, 3, 4]);
        assert!(c.chain_witness.as_ref().unwrap().validates(&c.reduced_graph));
        assert_eq!(classify_structural(&star()).unwrap().verdict, Verdict::NotFreiman);
        let k22 = classify_structural(&BipartiteGraph::complete(2).unwrap()).unwrap();
        assert_eq!(k22.verdict, Verdict::ReducesToAlmostCompleteCM);
        assert_eq!(k22.reduced_graph.n(), 1);
        assert_eq!(classify_structural(&g1()).unwrap().verdict, Verdict::AlmostCompleteCM);
        let union = g1().disjoint_union(&g1()).unwrap();
        assert_eq!(classify_structural(&union).unwrap_err(), ClassifyError::NotConnected);
    }

    #[test]
    fn cover_bijections() {
        let block = KmmBlock { indices: set(&[2, 4]) };
        assert_eq!(verify_cover_bijection(&block4(), &block).unwrap(), BijectionCheck::Holds { covers: 4 });
        let k22 = BipartiteGraph::complete(2).unwrap();
        let b = KmmBlock { indices: set(&[1, 2]) };
        assert_eq!(verify_cover_bijection(&k22, &b).unwrap(), BijectionCheck::Holds { covers: 2 });
        let k33 = BipartiteGraph::complete(3).unwrap();
        let b = KmmBlock { indices: set(&[1, 2, 3]) };
        assert_eq!(verify_cover_bijection(&k33, &b).unwrap(), BijectionCheck::Holds { covers: 2 });
        assert_eq!(
            verify_cover_bijection(&star(), &KmmBlock { indices: set(&[1, 2]) }).unwrap_err(),
            ClassifyError::InvalidBlock(set(&[1, 2]))
        );
    }

    #[test]
    fn bijection_fails_on_mixed_graph() {
        // {1,2} block plus a pair 3 hanging off y_1 only: not unmixed
        let g = BipartiteGraph::with_matching(3, [(1, 2), (2, 1), (3, 1)]).unwrap();
        let b = KmmBlock { indices: set(&[1, 2]) };
        assert!(!verify_cover_bijection(&g, &b).unwrap().holds());
    }
}
