//! Minimal vertex covers, unmixedness, the lattice `L_G` and finite posets.
//!
//! Covers are enumerated as complements of maximal independent sets, which
//! makes them independent of the poset machinery below; the two meet only
//! in tests and in the Hibi cross-checks of [`crate::ideal`].

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::IndexSet;
use crate::cliques::maximal_cliques;
use crate::graph::BipartiteGraph;
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("graph has {vertices} vertices, above the limit of {bound}")]
    TooLarge { vertices: usize, bound: usize },
    #[error("unmixedness checks disagree: cover enumeration says {brute_force}, edge condition says {structural}")]
    InconsistentUnmixedness { brute_force: bool, structural: bool },
    #[error("graph is not unmixed: cover {0} does not pick exactly one vertex of each pair")]
    NotUnmixed(MinimalCover),
    #[error("cover lattice is not closed: {a} and {b}")]
    ClosureViolation { a: IndexSet, b: IndexSet },
    #[error("cover lattice is missing {0}")]
    MissingExtreme(IndexSet),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation pair ({0}, {1}) out of range")]
    OutOfRange(usize, usize),
    #[error("p_{0} ≤ p_{1} and p_{1} ≤ p_{0}")]
    NotAntisymmetric(usize, usize),
    #[error("p_{0} ≤ p_{1} ≤ p_{2} but not p_{0} ≤ p_{2}")]
    NotTransitive(usize, usize, usize),
    #[error("poset has {0} elements, above the limit of {1}")]
    TooLarge(usize, usize),
}

/// Outcome of reading a poset off a matched graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphPosetError {
    /// `{x_i, y_j}` and `{x_j, y_i}` are both edges: a matched induced `K_{2,2}`.
    #[error("not a poset: pairs {{{0}, {1}}} induce K_2,2")]
    NotAPoset(usize, usize),
    /// Edge relation is not transitive, so the graph is not unmixed.
    #[error("edge relation not transitive at ({0}, {1}, {2})")]
    NotTransitive(usize, usize, usize),
}

/// A minimal vertex cover, split into its `x` and `y` indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinimalCover {
    pub x_part: IndexSet,
    pub y_part: IndexSet,
}

impl MinimalCover {
    pub fn len(&self) -> usize {
        self.x_part.len() + self.y_part.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn covers(&self, g: &BipartiteGraph) -> bool {
        g.edges().all(|(i, j)| self.x_part.contains(i) || self.y_part.contains(j))
    }
}

impl fmt::Debug for MinimalCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MinimalCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .x_part
            .iter()
            .map(|i| format!("x{i}"))
            .chain(self.y_part.iter().map(|j| format!("y{j}")))
            .collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Splits a vertex mask (`x_i` ↔ bit `i − 1`, `y_j` ↔ bit `n + j − 1`).
pub(crate) fn cover_from_mask(n: usize, mask: u64) -> MinimalCover {
    let low = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    MinimalCover {
        x_part: IndexSet::from_mask(mask & low),
        y_part: IndexSet::from_mask(mask >> n),
    }
}

pub(crate) fn cover_to_mask(n: usize, c: &MinimalCover) -> u64 {
    c.x_part.mask() | c.y_part.mask() << n
}

fn check_size(g: &BipartiteGraph, limits: &Limits) -> Result<(), CoverError> {
    let vertices = g.vertex_count();
    if vertices > limits.max_vertices.min(64) {
        return Err(CoverError::TooLarge { vertices, bound: limits.max_vertices.min(64) });
    }
    Ok(())
}

/// All minimal vertex covers, sorted by `x` part then `y` part.
pub fn minimal_vertex_covers(g: &BipartiteGraph) -> Result<Vec<MinimalCover>, CoverError> {
    minimal_vertex_covers_with(g, &Limits::default())
}

pub fn minimal_vertex_covers_with(g: &BipartiteGraph, limits: &Limits) -> Result<Vec<MinimalCover>, CoverError> {
    check_size(g, limits)?;
    let n = g.n();
    let all = if 2 * n == 64 { u64::MAX } else { (1u64 << (2 * n)) - 1 };
    let xs = (1u64 << n) - 1;
    let ys = all & !xs;
    // adjacency of the complement graph: independent sets of G are its cliques
    let mut adj = vec![0u64; 2 * n];
    for (i, (slot, &row)) in adj.iter_mut().zip(g.rows()).enumerate() {
        *slot = (xs | (ys & !(row << n))) & !(1 << i);
    }
    for j in 0..n {
        let x_neighbors = g.rows().iter().enumerate().filter(|(_, &r)| r >> j & 1 == 1).fold(0u64, |m, (i, _)| m | 1 << i);
        adj[n + j] = (ys | (xs & !x_neighbors)) & !(1 << (n + j));
    }
    let mut covers: Vec<MinimalCover> =
        maximal_cliques(&adj, all).into_iter().map(|s| cover_from_mask(n, all & !s)).collect();
    covers.sort_unstable();
    Ok(covers)
}

/// Result of [`is_unmixed`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unmixedness {
    Unmixed,
    /// Two minimal covers of different sizes.
    Mixed { smaller: MinimalCover, larger: MinimalCover },
}

impl Unmixedness {
    pub fn is_unmixed(&self) -> bool {
        matches!(self, Unmixedness::Unmixed)
    }
}

/// Decides unmixedness by comparing minimal cover sizes, and checks the
/// answer against [`is_unmixed_structural`].
pub fn is_unmixed(g: &BipartiteGraph) -> Result<Unmixedness, CoverError> {
    is_unmixed_with(g, &Limits::default())
}

pub fn is_unmixed_with(g: &BipartiteGraph, limits: &Limits) -> Result<Unmixedness, CoverError> {
    let covers = minimal_vertex_covers_with(g, limits)?;
    let smallest = covers.iter().min_by_key(|c| (c.len(), **c)).copied();
    let largest = covers.iter().max_by_key(|c| (c.len(), std::cmp::Reverse(**c))).copied();
    let verdict = match (smallest, largest) {
        (Some(s), Some(l)) if s.len() != l.len() => Unmixedness::Mixed { smaller: s, larger: l },
        _ => Unmixedness::Unmixed,
    };
    let structural = is_unmixed_structural(g);
    if verdict.is_unmixed() != structural {
        return Err(CoverError::InconsistentUnmixedness { brute_force: verdict.is_unmixed(), structural });
    }
    Ok(verdict)
}

/// First `(i, j, k)` with distinct indices such that `{x_i, y_j}` and
/// `{x_j, y_k}` are edges but `{x_i, y_k}` is not.
pub fn transitivity_violation(g: &BipartiteGraph) -> Option<(usize, usize, usize)> {
    for (i, j) in g.edges() {
        if i == j {
            continue;
        }
        let missing = g.neighbors_of_x(j).difference(g.neighbors_of_x(i));
        if let Some(k) = missing.min() {
            return Some((i, j, k));
        }
    }
    None
}

/// Unmixedness via the edge condition: with `{x_i, y_i}` edges for all `i`,
/// the graph is unmixed iff `{x_i, y_j}, {x_j, y_k} ∈ E` implies
/// `{x_i, y_k} ∈ E` for distinct `i, j, k`.
///
/// Only the graph's own matching is tested. An unmixed graph satisfies the
/// condition for every perfect matching: if it failed at `(i, j, k)`, a
/// maximal independent set through `x_i, y_k` would complement to a
/// minimal cover of size `n` missing both ends of `{x_i, y_j}` or of
/// `{x_j, y_k}`.
pub fn is_unmixed_structural(g: &BipartiteGraph) -> bool {
    transitivity_violation(g).is_none()
}

/// The lattice `L_G`: x-parts of the minimal covers of an unmixed graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverLattice {
    pub n: usize,
    /// Sorted by bitmask.
    pub members: Vec<IndexSet>,
}

impl CoverLattice {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: IndexSet) -> bool {
        self.members.binary_search(&s).is_ok()
    }
}

pub fn cover_lattice(g: &BipartiteGraph) -> Result<CoverLattice, CoverError> {
    cover_lattice_with(g, &Limits::default())
}

/// Builds `L_G` and checks that it is a sublattice of `2^[n]` containing
/// `∅` and `[n]`.
pub fn cover_lattice_with(g: &BipartiteGraph, limits: &Limits) -> Result<CoverLattice, CoverError> {
    let n = g.n();
    let full = IndexSet::full(n);
    let covers = minimal_vertex_covers_with(g, limits)?;
    let mut members = Vec::with_capacity(covers.len());
    for c in covers {
        if c.y_part != full.difference(c.x_part) {
            return Err(CoverError::NotUnmixed(c));
        }
        members.push(c.x_part);
    }
    members.sort_unstable();
    let set: HashSet<IndexSet> = members.iter().copied().collect();
    for extreme in [IndexSet::empty(), full] {
        if !set.contains(&extreme) {
            return Err(CoverError::MissingExtreme(extreme));
        }
    }
    for (k, &a) in members.iter().enumerate() {
        for &b in &members[k + 1..] {
            if !set.contains(&a.union(b)) || !set.contains(&a.intersection(b)) {
                return Err(CoverError::ClosureViolation { a, b });
            }
        }
    }
    Ok(CoverLattice { n, members })
}

/// A partial order on `{p_1, ..., p_n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    /// `up[i]` holds every `j` with `p_{i+1} ≤ p_j`.
    up: Vec<u64>,
}

impl Poset {
    /// A poset from its full relation; reflexive pairs may be omitted.
    pub fn from_relation(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Poset, PosetError> {
        let up = Poset::raw_relation(n, pairs)?;
        let p = Poset { n, up };
        p.validate()?;
        Ok(p)
    }

    /// The poset generated by `pairs` under reflexive-transitive closure.
    pub fn generated_by(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Poset, PosetError> {
        let mut up = Poset::raw_relation(n, pairs)?;
        loop {
            let mut changed = false;
            for i in 0..n {
                let reach = IndexSet::from_mask(up[i]).iter().fold(up[i], |acc, j| acc | up[j - 1]);
                if reach != up[i] {
                    up[i] = reach;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let p = Poset { n, up };
        p.validate()?;
        Ok(p)
    }

    pub fn chain(n: usize) -> Poset {
        Poset { n, up: (0..n).map(|i| IndexSet::full(n).mask() & !((1u64 << i) - 1)).collect() }
    }

    pub fn antichain(n: usize) -> Poset {
        Poset { n, up: (0..n).map(|i| 1u64 << i).collect() }
    }

    fn raw_relation(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Vec<u64>, PosetError> {
        if n > 64 {
            return Err(PosetError::TooLarge(n, 64));
        }
        let mut up: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for (i, j) in pairs {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(PosetError::OutOfRange(i, j));
            }
            up[i - 1] |= 1 << (j - 1);
        }
        Ok(up)
    }

    fn validate(&self) -> Result<(), PosetError> {
        for i in 1..=self.n {
            for j in self.up_set(i) {
                if j != i && self.leq(j, i) {
                    return Err(PosetError::NotAntisymmetric(i.min(j), i.max(j)));
                }
                if let Some(k) = self.up_set(j).difference(self.up_set(i)).min() {
                    return Err(PosetError::NotTransitive(i, j, k));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `p_i ≤ p_j`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        (1..=self.n).contains(&i) && (1..=self.n).contains(&j) && self.up[i - 1] >> (j - 1) & 1 == 1
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// `{j : p_i ≤ p_j}`.
    pub fn up_set(&self, i: usize) -> IndexSet {
        IndexSet::from_mask(self.up[i - 1])
    }

    /// `{j : p_j ≤ p_i}`.
    pub fn down_set(&self, i: usize) -> IndexSet {
        (1..=self.n).filter(|&j| self.leq(j, i)).collect()
    }

    /// Incomparable pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        (1..=self.n)
            .flat_map(|i| (i + 1..=self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.comparable(i, j))
            .collect()
    }

    /// A linear extension: elements sorted by the size of their down-set.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (1..=self.n).collect();
        order.sort_by_key(|&i| (self.down_set(i).len(), i));
        order
    }

    /// Subposet on the elements of `keep`, relabeled `1..=|keep|` in order.
    pub fn restrict(&self, keep: IndexSet) -> Poset {
        let kept: Vec<usize> = keep.iter().filter(|&i| i <= self.n).collect();
        let up = kept
            .iter()
            .map(|&i| {
                kept.iter().enumerate().filter(|&(_, &j)| self.leq(i, j)).fold(0u64, |m, (k, _)| m | 1 << k)
            })
            .collect();
        Poset { n: kept.len(), up }
    }

    /// Relation pairs `(i, j)` with `p_i ≤ p_j`, reflexive ones included.
    pub fn relation(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n).flat_map(move |i| self.up_set(i).iter().map(move |j| (i, j)))
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strict: Vec<String> =
            self.relation().filter(|(i, j)| i != j).map(|(i, j)| format!("p{i}<p{j}")).collect();
        write!(f, "Poset(n={}, [{}])", self.n, strict.join(" "))
    }
}

/// First matched induced `K_{2,2}`: indices `i < j` with both cross edges.
pub fn matched_k22(g: &BipartiteGraph) -> Option<(usize, usize)> {
    g.edges().find(|&(i, j)| i < j && g.has_edge(j, i))
}

/// The relation `p_i ≤ p_j ⇔ {x_i, y_j} ∈ E(G)`, if it is a partial order.
pub fn poset_from_graph(g: &BipartiteGraph) -> Result<Poset, GraphPosetError> {
    if let Some((i, j)) = matched_k22(g) {
        return Err(GraphPosetError::NotAPoset(i, j));
    }
    if let Some((i, j, k)) = transitivity_violation(g) {
        return Err(GraphPosetError::NotTransitive(i, j, k));
    }
    Ok(Poset { n: g.n(), up: g.rows().to_vec() })
}

/// The graph `G(P)`: `{x_i, y_j}` is an edge iff `p_i ≤ p_j`.
pub fn graph_from_poset(p: &Poset) -> BipartiteGraph {
    BipartiteGraph::new(p.n(), p.relation()).expect("a poset relation is reflexive and in range")
}

pub fn poset_ideals(p: &Poset) -> Result<Vec<IndexSet>, PosetError> {
    poset_ideals_with(p, &Limits::default())
}

/// All down-closed subsets, sorted by bitmask.
///
/// Elements are decided in a linear extension, and an element may join
/// only when everything below it already has, so every branch ends in a
/// distinct ideal.
pub fn poset_ideals_with(p: &Poset, limits: &Limits) -> Result<Vec<IndexSet>, PosetError> {
    let bound = limits.max_vertices / 2;
    if p.n() > bound {
        return Err(PosetError::TooLarge(p.n(), bound));
    }
    let order = p.linear_extension();
    let below: Vec<IndexSet> = order
        .iter()
        .map(|&e| {
            let mut d = p.down_set(e);
            d.remove(e);
            d
        })
        .collect();
    let mut out = Vec::new();
    grow(&order, &below, 0, IndexSet::empty(), &mut out);
    out.sort_unstable();
    Ok(out)
}

fn grow(order: &[usize], below: &[IndexSet], k: usize, current: IndexSet, out: &mut Vec<IndexSet>) {
    if k == order.len() {
        out.push(current);
        return;
    }
    grow(order, below, k + 1, current, out);
    if below[k].is_subset(current) {
        let mut next = current;
        next.insert(order[k]);
        grow(order, below, k + 1, next, out);
    }
}

pub fn is_chain(p: &Poset) -> bool {
    p.incomparable_pairs().is_empty()
}
