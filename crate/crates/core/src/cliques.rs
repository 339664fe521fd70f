//! Maximal clique enumeration on graphs with at most 64 vertices.

/// All maximal cliques of the undirected graph whose vertex `v` is adjacent
/// to the vertices set in `adj[v]` (no self loops), restricted to the
/// vertices in `universe`.
///
/// Bron–Kerbosch with Tomita pivoting: the pivot maximizes `|P ∩ N(u)|` over
/// `u ∈ P ∪ X`, so only `P ∖ N(pivot)` is branched on.
pub(crate) fn maximal_cliques(adj: &[u64], universe: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if universe == 0 {
        return out;
    }
    expand(adj, 0, universe, 0, &mut out);
    out.sort_unstable();
    out
}

fn expand(adj: &[u64], clique: u64, mut candidates: u64, mut excluded: u64, out: &mut Vec<u64>) {
    if candidates == 0 {
        if excluded == 0 {
            out.push(clique);
        }
        return;
    }
    let pivot = bits(candidates | excluded)
        .max_by_key(|&u| (candidates & adj[u]).count_ones())
        .expect("non-empty");
    for v in bits(candidates & !adj[pivot]) {
        let bit = 1u64 << v;
        expand(adj, clique | bit, candidates & adj[v], excluded & adj[v], out);
        candidates &= !bit;
        excluded |= bit;
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            v
        })
    })
}
