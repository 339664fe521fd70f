//! Bipartite graphs on `{x_1..x_n} ∪ {y_1..y_n}`.
//!
//! A [`RawBipartiteGraph`] is whatever the input file says. A
//! [`BipartiteGraph`] is always in matched labeling: `{x_i, y_i}` is an edge
//! for every `i`, so deleting vertices always means deleting whole pairs.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::IndexSet;

/// Largest `n` a [`BipartiteGraph`] can hold (every vertex set must fit in
/// one 64-bit mask).
pub const MAX_PAIRS: usize = 32;

/// Largest `n` [`enumerate_graphs_with`] accepts regardless of the
/// configured bound (`n² − n` edge slots must fit in a counter).
pub const MAX_ENUMERATION_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid graph document: {0}")]
    Document(String),
    #[error("edge ({i}, {j}) out of range for n = {n}")]
    OutOfRange { i: usize, j: usize, n: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("matched edge ({0}, {0}) is missing")]
    MissingMatchedEdge(usize),
    #[error("graph must have between 1 and {MAX_PAIRS} vertex pairs, got {0}")]
    BadSize(usize),
    #[error("cannot take an induced subgraph on an empty set of pairs")]
    EmptySelection,
    #[error("enumeration up to n = {requested} exceeds the bound {bound}")]
    EnumerationBound { requested: usize, bound: usize },
}

/// A bipartite graph exactly as read from input, before any relabeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawBipartiteGraph {
    pub left_size: usize,
    pub right_size: usize,
    /// Pairs `(i, j)` meaning `{x_i, y_j}`, 1-based.
    pub edges: BTreeSet<(usize, usize)>,
}

/// Why [`find_pairing`] could not produce a matched labeling.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NoPairing {
    #[error("sides have different sizes ({left} and {right})")]
    UnequalSides { left: usize, right: usize },
    #[error("no perfect matching: x_{unmatched} cannot be matched")]
    NoPerfectMatching { unmatched: usize },
    #[error("graph has {0} pairs, more than the supported {MAX_PAIRS}")]
    TooLarge(usize),
}

/// A balanced bipartite graph in matched labeling.
///
/// Row `i` holds the neighbours `y_j` of `x_i` as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    n: usize,
    rows: Vec<u64>,
}

impl BipartiteGraph {
    /// Builds a graph from 1-based edges `(i, j)` = `{x_i, y_j}`.
    ///
    /// Every matched edge `(i, i)` must be present and no edge may repeat.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_PAIRS {
            return Err(GraphError::BadSize(n));
        }
        let mut rows = vec![0u64; n];
        for (i, j) in edges {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(GraphError::OutOfRange { i, j, n });
            }
            let bit = 1u64 << (j - 1);
            if rows[i - 1] & bit != 0 {
                return Err(GraphError::DuplicateEdge(i, j));
            }
            rows[i - 1] |= bit;
        }
        if let Some(i) = (0..n).find(|&i| rows[i] & (1 << i) == 0) {
            return Err(GraphError::MissingMatchedEdge(i + 1));
        }
        Ok(BipartiteGraph { n, rows })
    }

    /// Same as [`BipartiteGraph::new`] but adds the matched edges itself and
    /// tolerates repeats. Handy for writing fixtures.
    pub fn with_matching(n: usize, extra: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let set: BTreeSet<(usize, usize)> = (1..=n).map(|i| (i, i)).chain(extra).collect();
        BipartiteGraph::new(n, set)
    }

    /// The complete bipartite graph `K_{n,n}`.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        BipartiteGraph::new(n, (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))))
    }

    /// The complete C-M graph on `n` pairs: `{x_i, y_j}` is an edge iff `i ≤ j`.
    pub fn chain(n: usize) -> Result<Self, GraphError> {
        BipartiteGraph::new(n, (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))))
    }

    pub(crate) fn from_rows(n: usize, rows: Vec<u64>) -> Self {
        debug_assert_eq!(rows.len(), n);
        BipartiteGraph { n, rows }
    }

    /// Number of vertex pairs.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        (1..=self.n).contains(&i) && (1..=self.n).contains(&j) && self.rows[i - 1] & (1 << (j - 1)) != 0
    }

    /// Neighbours `y_j` of `x_i`.
    pub fn neighbors_of_x(&self, i: usize) -> IndexSet {
        IndexSet::from_mask(self.rows[i - 1])
    }

    /// Neighbours `x_i` of `y_j`.
    pub fn neighbors_of_y(&self, j: usize) -> IndexSet {
        (1..=self.n).filter(|&i| self.has_edge(i, j)).collect()
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| IndexSet::from_mask(r).iter().map(move |j| (i + 1, j)))
    }

    /// Graph on `n + other.n` pairs; `other`'s indices are shifted by `n`.
    pub fn disjoint_union(&self, other: &BipartiteGraph) -> Result<BipartiteGraph, GraphError> {
        let shift = self.n;
        BipartiteGraph::new(
            self.n + other.n,
            self.edges().chain(other.edges().map(|(i, j)| (i + shift, j + shift))),
        )
    }

    /// Serializes to the line-oriented graph file format.
    pub fn to_graph_file(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (i, j) in self.edges() {
            let _ = writeln!(out, "e {i} {j}");
        }
        out
    }

    pub fn to_raw(&self) -> RawBipartiteGraph {
        RawBipartiteGraph {
            left_size: self.n,
            right_size: self.n,
            edges: self.edges().collect(),
        }
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BipartiteGraph(n={}, edges=[", self.n)?;
        for (k, (i, j)) in self.edges().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{i}y{j}")?;
        }
        f.write_str("])")
    }
}

/// Parses the line-oriented graph file format.
///
/// ```text
/// # comment
/// n 2
/// e 1 1
/// e 2 2
/// e 1 2
/// ```
///
/// `n <k>` declares `k` vertices on each side; `n <left> <right>` declares
/// unequal sides. Each `e <i> <j>` line is the edge `{x_i, y_j}`.
pub fn parse_graph(text: &str) -> Result<RawBipartiteGraph, GraphError> {
    let mut sizes: Option<(usize, usize)> = None;
    let mut edges = BTreeSet::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| GraphError::Parse { line: line_no, message };
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let tag = fields.next().unwrap_or("");
        let nums = fields
            .map(|f| f.parse::<usize>().map_err(|_| err(format!("expected a non-negative integer, found `{f}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        match tag {
            "n" => {
                if sizes.is_some() {
                    return Err(err("repeated `n` header".into()));
                }
                let (left, right) = match nums[..] {
                    [k] => (k, k),
                    [l, r] => (l, r),
                    _ => return Err(err("`n` takes one or two integers".into())),
                };
                if left == 0 || right == 0 {
                    return Err(err("sides must be non-empty".into()));
                }
                sizes = Some((left, right));
            }
            "e" => {
                let (left, right) = sizes.ok_or_else(|| err("edge before the `n` header".into()))?;
                let [i, j] = nums[..] else {
                    return Err(err("`e` takes exactly two integers".into()));
                };
                if i == 0 || i > left {
                    return Err(err(format!("index {i} out of range 1..={left}")));
                }
                if j == 0 || j > right {
                    return Err(err(format!("index {j} out of range 1..={right}")));
                }
                if !edges.insert((i, j)) {
                    return Err(err(format!("duplicate edge {i} {j}")));
                }
            }
            other => return Err(err(format!("unknown record `{other}`"))),
        }
    }
    let (left_size, right_size) = sizes.ok_or(GraphError::Parse { line: 0, message: "missing `n` header".into() })?;
    Ok(RawBipartiteGraph { left_size, right_size, edges })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Parses the structured form `{"n": 2, "edges": [[1,1],[2,2],[1,2]]}`.
pub fn parse_graph_document(text: &str) -> Result<RawBipartiteGraph, GraphError> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| GraphError::Document(e.to_string()))?;
    if doc.n == 0 {
        return Err(GraphError::Document("n must be positive".into()));
    }
    let mut edges = BTreeSet::new();
    for (i, j) in doc.edges {
        if i == 0 || j == 0 || i > doc.n || j > doc.n {
            return Err(GraphError::OutOfRange { i, j, n: doc.n });
        }
        if !edges.insert((i, j)) {
            return Err(GraphError::DuplicateEdge(i, j));
        }
    }
    Ok(RawBipartiteGraph { left_size: doc.n, right_size: doc.n, edges })
}

/// Accepts either input form, picking the structured one when the text
/// starts with `{`.
pub fn read_graph(text: &str) -> Result<RawBipartiteGraph, GraphError> {
    if text.trim_start().starts_with('{') {
        parse_graph_document(text)
    } else {
        parse_graph(text)
    }
}

/// Relabels the right side along a perfect matching so that `{x_i, y_i}` is
/// an edge for every `i`.
///
/// Inputs that already contain every `{x_i, y_i}` come back unchanged.
/// Otherwise the matching is built by augmenting paths, visiting left
/// vertices in order and trying `y_i` first for `x_i`, then the remaining
/// candidates in increasing index, so the result is deterministic.
pub fn find_pairing(g: &RawBipartiteGraph) -> Result<BipartiteGraph, NoPairing> {
    if g.left_size != g.right_size {
        return Err(NoPairing::UnequalSides { left: g.left_size, right: g.right_size });
    }
    let n = g.left_size;
    if n > MAX_PAIRS {
        return Err(NoPairing::TooLarge(n));
    }
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in &g.edges {
        adj[i - 1].push(j - 1);
    }
    for (u, list) in adj.iter_mut().enumerate() {
        list.sort_by_key(|&v| (v != u, v));
    }
    // match_right[j] = left vertex currently matched to y_{j+1}
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    for u in 0..n {
        let mut seen = vec![false; n];
        if !augment(u, &adj, &mut seen, &mut match_right) {
            return Err(NoPairing::NoPerfectMatching { unmatched: u + 1 });
        }
    }
    // y_j is renamed to y_{match_right[j]}
    let mut rows = vec![0u64; n];
    for &(i, j) in &g.edges {
        let label = match_right[j - 1].expect("perfect matching covers every right vertex");
        rows[i - 1] |= 1 << label;
    }
    Ok(BipartiteGraph::from_rows(n, rows))
}

fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if match_right[v].is_none_or(|w| augment(w, adj, seen, match_right)) {
            match_right[v] = Some(u);
            return true;
        }
    }
    false
}

/// Subgraph induced on the pairs `{x_i, y_i : i ∈ keep}`, reindexed
/// `1..=|keep|` in increasing order.
pub fn induced_subgraph(g: &BipartiteGraph, keep: IndexSet) -> Result<BipartiteGraph, GraphError> {
    let kept: Vec<usize> = keep.iter().filter(|&i| i <= g.n).collect();
    if kept.is_empty() {
        return Err(GraphError::EmptySelection);
    }
    if kept.len() != keep.len() {
        let bad = keep.max().unwrap_or(0);
        return Err(GraphError::OutOfRange { i: bad, j: bad, n: g.n });
    }
    let rows = kept
        .iter()
        .map(|&i| {
            kept.iter()
                .enumerate()
                .filter(|&(_, &j)| g.has_edge(i, j))
                .fold(0u64, |acc, (new_j, _)| acc | 1 << new_j)
        })
        .collect();
    Ok(BipartiteGraph::from_rows(kept.len(), rows))
}

/// Connectivity over all `2n` vertices.
pub fn is_connected(g: &BipartiteGraph) -> bool {
    // x_i and y_i are always adjacent, so it is enough to walk pairs:
    // pair i touches pair j when {x_i, y_j} or {x_j, y_i} is an edge.
    let mut reached = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let i = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let mut touch = g.rows[i];
        for (j, &row) in g.rows.iter().enumerate() {
            if row & (1 << i) != 0 {
                touch |= 1 << j;
            }
        }
        let fresh = touch & !reached;
        reached |= fresh;
        frontier |= fresh;
    }
    reached.count_ones() as usize == g.n
}

/// Every matched graph with `n ≤ max_n`, using the default bound.
pub fn enumerate_graphs(max_n: usize) -> Result<GraphEnumeration, GraphError> {
    enumerate_graphs_with(max_n, crate::DEFAULT_ENUMERATION_BOUND)
}

/// Every matched graph with `1 ≤ n ≤ max_n`: for each `n`, all `2^(n² − n)`
/// ways to add off-diagonal edges to the perfect matching.
pub fn enumerate_graphs_with(max_n: usize, bound: usize) -> Result<GraphEnumeration, GraphError> {
    let bound = bound.min(MAX_ENUMERATION_N);
    if max_n == 0 || max_n > bound {
        return Err(GraphError::EnumerationBound { requested: max_n, bound });
    }
    Ok(GraphEnumeration { max_n, n: 1, slots: Vec::new(), next: 0, end: 0 })
}

/// Iterator returned by [`enumerate_graphs`].
#[derive(Debug, Clone)]
pub struct GraphEnumeration {
    max_n: usize,
    n: usize,
    slots: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl GraphEnumeration {
    fn enter(&mut self, n: usize) {
        self.n = n;
        self.slots = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        self.next = 0;
        self.end = 1u64 << self.slots.len();
    }
}

impl Iterator for GraphEnumeration {
    type Item = BipartiteGraph;

    fn next(&mut self) -> Option<BipartiteGraph> {
        if self.end == 0 {
            self.enter(1);
        }
        while self.next == self.end {
            if self.n >= self.max_n {
                return None;
            }
            self.enter(self.n + 1);
        }
        let code = self.next;
        self.next += 1;
        let mut rows: Vec<u64> = (0..self.n).map(|i| 1u64 << i).collect();
        for (k, &(i, j)) in self.slots.iter().enumerate() {
            if code >> k & 1 == 1 {
                rows[i] |= 1 << j;
            }
        }
        Some(BipartiteGraph::from_rows(self.n, rows))
    }
}
