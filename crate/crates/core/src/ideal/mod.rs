//! Monomial ideals given by exponent vectors: cover, Hibi and edge ideals,
//! powers and products, the analytic spread and the Freiman test.
//!
//! Variables are laid out as `x_1..x_n, y_1..y_n`, so an ideal attached to a
//! graph on `n` pairs lives in `2n` variables.

mod exchange;
pub mod rank;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covers::{self, CoverError, Poset, PosetError};
use crate::graph::BipartiteGraph;
use crate::Limits;

pub use exchange::{parse_exchange, write_exchange, ExchangeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("an ideal needs at least one generator")]
    Empty,
    #[error("exponent vector has length {found}, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("ideal is not generated in a single degree")]
    NotEquigenerated,
    #[error("ideals live in different rings ({0} and {1} variables)")]
    RingMismatch(usize, usize),
    #[error("both factors involve variable {0}")]
    OverlappingSupports(usize),
    #[error("power must be at least 1")]
    ZeroPower,
    #[error("about {needed} candidate sums exceed the work bound of {bound}")]
    WorkBound { needed: u128, bound: usize },
    #[error("deficiency {} is negative: μ = {}, μ(I²) = {}, ℓ = {}", .0.deficiency, .0.mu, .0.mu2, .0.ell)]
    LowerBoundViolated(FreimanReport),
    #[error(transparent)]
    Covers(#[from] CoverError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Exponents of a monomial `x^a`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        ExponentVector(exps)
    }

    pub fn zeros(len: usize) -> Self {
        ExponentVector(vec![0; len])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The product of the two monomials.
    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Renders as a monomial in `x_1..x_n, y_1..y_n` (or `z_1..` when the
    /// number of variables is odd).
    pub fn monomial(&self) -> String {
        let half = if self.0.len().is_multiple_of(2) { self.0.len() / 2 } else { 0 };
        let mut out = String::new();
        for (pos, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = match half {
                0 => format!("z{}", pos + 1),
                h if pos < h => format!("x{}", pos + 1),
                h => format!("y{}", pos - h + 1),
            };
            out.push_str(&name);
            if e > 1 {
                out.push_str(&format!("^{e}"));
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.monomial())
    }
}

/// A monomial ideal by its minimal generators.
///
/// Generators are deduplicated, minimal and sorted in decreasing
/// lexicographic order of exponent vectors (so `x_1^2...` comes first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdeal {
    n_vars: usize,
    gens: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, discarding repeats and
    /// non-minimal generators.
    pub fn from_generators(n_vars: usize, gens: impl IntoIterator<Item = ExponentVector>) -> Result<Self, IdealError> {
        let mut gens: Vec<ExponentVector> = gens.into_iter().collect();
        if let Some(bad) = gens.iter().find(|g| g.len() != n_vars) {
            return Err(IdealError::Length { expected: n_vars, found: bad.len() });
        }
        if gens.is_empty() {
            return Err(IdealError::Empty);
        }
        gens.sort_unstable_by(|a, b| b.cmp(a));
        gens.dedup();
        let first = gens[0].degree();
        if gens.iter().any(|g| g.degree() != first) {
            // equal-degree monomials never divide each other, so only the
            // mixed case needs pruning
            let all = gens.clone();
            gens.retain(|g| !all.iter().any(|h| h != g && h.divides(g)));
        }
        Ok(MonomialIdeal { n_vars, gens })
    }

    /// `gens` must already be sorted decreasing, distinct and of one degree.
    fn from_canonical(n_vars: usize, gens: Vec<ExponentVector>) -> Self {
        debug_assert!(gens.windows(2).all(|w| w[0] > w[1]));
        MonomialIdeal { n_vars, gens }
    }

    /// The unit ideal in `n_vars` variables.
    pub fn unit(n_vars: usize) -> Self {
        MonomialIdeal { n_vars, gens: vec![ExponentVector::zeros(n_vars)] }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    /// `μ(I)`.
    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    /// The common degree of all generators, if there is one.
    pub fn degree(&self) -> Option<u32> {
        let d = self.gens[0].degree();
        self.gens.iter().all(|g| g.degree() == d).then_some(d)
    }

    pub fn is_equigenerated(&self) -> bool {
        self.degree().is_some()
    }

    /// Variables appearing in some generator (0-based positions).
    pub fn support(&self) -> Vec<usize> {
        (0..self.n_vars).filter(|&v| self.gens.iter().any(|g| g.0[v] > 0)).collect()
    }

    /// Moves variable `v` to position `positions[v]` in a ring with
    /// `n_vars` variables.
    pub fn embed(&self, n_vars: usize, positions: &[usize]) -> Result<MonomialIdeal, IdealError> {
        if positions.len() != self.n_vars {
            return Err(IdealError::Length { expected: self.n_vars, found: positions.len() });
        }
        if let Some(&bad) = positions.iter().find(|&&p| p >= n_vars) {
            return Err(IdealError::Length { expected: n_vars, found: bad + 1 });
        }
        let gens = self.gens.iter().map(|g| {
            let mut e = vec![0; n_vars];
            for (v, &p) in positions.iter().enumerate() {
                e[p] += g.0[v];
            }
            ExponentVector(e)
        });
        MonomialIdeal::from_generators(n_vars, gens)
    }

    /// Rows of the exponent matrix.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.gens.iter().map(|g| g.0.iter().map(|&e| i64::from(e)).collect()).collect()
    }
}

pub fn cover_ideal(g: &BipartiteGraph) -> Result<MonomialIdeal, IdealError> {
    cover_ideal_with(g, &Limits::default())
}

/// One squarefree generator per minimal vertex cover.
///
/// For a graph that is not unmixed the generators have different degrees;
/// the ideal is still returned, but the Freiman operations refuse it.
pub fn cover_ideal_with(g: &BipartiteGraph, limits: &Limits) -> Result<MonomialIdeal, IdealError> {
    let n = g.n();
    let gens = covers::minimal_vertex_covers_with(g, limits)?.into_iter().map(|c| {
        let mut e = vec![0; 2 * n];
        for i in c.x_part {
            e[i - 1] = 1;
        }
        for j in c.y_part {
            e[n + j - 1] = 1;
        }
        ExponentVector(e)
    });
    MonomialIdeal::from_generators(2 * n, gens)
}

pub fn hibi_ideal(p: &Poset) -> Result<MonomialIdeal, IdealError> {
    hibi_ideal_with(p, &Limits::default())
}

/// Generators `u_J = ∏_{i ∈ J} x_i · ∏_{i ∉ J} y_i` over all poset ideals `J`.
pub fn hibi_ideal_with(p: &Poset, limits: &Limits) -> Result<MonomialIdeal, IdealError> {
    let n = p.n();
    let gens = covers::poset_ideals_with(p, limits)?.into_iter().map(|ideal| {
        let mut e = vec![0; 2 * n];
        for i in 1..=n {
            if ideal.contains(i) {
                e[i - 1] = 1;
            } else {
                e[n + i - 1] = 1;
            }
        }
        ExponentVector(e)
    });
    MonomialIdeal::from_generators(2 * n, gens)
}

/// Generators `x_i y_j` for the edges `{x_i, y_j}`.
pub fn edge_ideal(g: &BipartiteGraph) -> MonomialIdeal {
    let n = g.n();
    let gens = g.edges().map(|(i, j)| {
        let mut e = vec![0; 2 * n];
        e[i - 1] = 1;
        e[n + j - 1] = 1;
        ExponentVector(e)
    });
    MonomialIdeal::from_generators(2 * n, gens).expect("matched graphs have at least one edge")
}

pub fn power(ideal: &MonomialIdeal, k: u32) -> Result<MonomialIdeal, IdealError> {
    power_with(ideal, k, &Limits::default())
}

/// `I^k` for an equigenerated `I`: all sums of `k` generators with
/// repetition. Products of equal degree are minimal as soon as they are
/// distinct, so deduplication is all that is needed.
pub fn power_with(ideal: &MonomialIdeal, k: u32, limits: &Limits) -> Result<MonomialIdeal, IdealError> {
    if k == 0 {
        return Err(IdealError::ZeroPower);
    }
    if !ideal.is_equigenerated() {
        return Err(IdealError::NotEquigenerated);
    }
    let mut current = ideal.gens.clone();
    for _ in 1..k {
        current = sum_set(&current, &ideal.gens, limits)?;
    }
    Ok(MonomialIdeal::from_canonical(ideal.n_vars, current))
}

/// `μ(I^k)`.
pub fn power_mu(ideal: &MonomialIdeal, k: u32) -> Result<usize, IdealError> {
    power(ideal, k).map(|p| p.mu())
}

pub fn power_mu_with(ideal: &MonomialIdeal, k: u32, limits: &Limits) -> Result<usize, IdealError> {
    power_with(ideal, k, limits).map(|p| p.mu())
}

/// Distinct pairwise sums, sorted decreasing.
fn sum_set(a: &[ExponentVector], b: &[ExponentVector], limits: &Limits) -> Result<Vec<ExponentVector>, IdealError> {
    let needed = a.len() as u128 * b.len() as u128;
    if needed > limits.max_terms as u128 {
        return Err(IdealError::WorkBound { needed, bound: limits.max_terms });
    }
    let mut seen: HashSet<ExponentVector> = HashSet::with_capacity(a.len().max(b.len()) * 2);
    for u in a {
        for v in b {
            seen.insert(u.add(v));
        }
    }
    let mut out: Vec<ExponentVector> = seen.into_iter().collect();
    out.sort_unstable_by(|x, y| y.cmp(x));
    assert!(out.windows(2).all(|w| w[0] > w[1]), "sum set is not strictly sorted after deduplication");
    Ok(out)
}

/// `I · J` with no restriction on the supports.
pub fn product(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
    if i.n_vars != j.n_vars {
        return Err(IdealError::RingMismatch(i.n_vars, j.n_vars));
    }
    let sums = sum_set(&i.gens, &j.gens, &Limits::default())?;
    MonomialIdeal::from_generators(i.n_vars, sums)
}

/// `I · J` for ideals in disjoint sets of variables, such as the cover
/// ideals of the two halves of a disjoint union.
pub fn product_ideal(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
    if i.n_vars != j.n_vars {
        return Err(IdealError::RingMismatch(i.n_vars, j.n_vars));
    }
    let theirs = j.support();
    if let Some(v) = i.support().into_iter().find(|v| theirs.contains(v)) {
        return Err(IdealError::OverlappingSupports(v + 1));
    }
    product(i, j)
}

/// Analytic spread of an equigenerated monomial ideal: the rank of its
/// exponent matrix.
pub fn analytic_spread(ideal: &MonomialIdeal) -> Result<usize, IdealError> {
    if !ideal.is_equigenerated() {
        return Err(IdealError::NotEquigenerated);
    }
    Ok(rank::integer_rank(&ideal.exponent_matrix()))
}

/// The numbers behind the Freiman test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreimanReport {
    pub mu: usize,
    pub mu2: usize,
    pub ell: usize,
    /// `ℓμ − C(ℓ, 2)`.
    pub bound: i64,
    /// `μ(I²) − bound`; never negative.
    pub deficiency: i64,
    pub is_freiman: bool,
}

pub fn freiman_report(ideal: &MonomialIdeal) -> Result<FreimanReport, IdealError> {
    freiman_report_with(ideal, &Limits::default())
}

pub fn freiman_report_with(ideal: &MonomialIdeal, limits: &Limits) -> Result<FreimanReport, IdealError> {
    let ell = analytic_spread(ideal)?;
    let mu = ideal.mu();
    let mu2 = power_mu_with(ideal, 2, limits)?;
    let bound = freiman_bound(ell, mu);
    let deficiency = mu2 as i64 - bound;
    let report = FreimanReport { mu, mu2, ell, bound, deficiency, is_freiman: deficiency == 0 };
    if deficiency < 0 {
        return Err(IdealError::LowerBoundViolated(report));
    }
    Ok(report)
}

/// `ℓμ − C(ℓ, 2)`.
pub fn freiman_bound(ell: usize, mu: usize) -> i64 {
    let (ell, mu) = (ell as i64, mu as i64);
    ell * mu - ell * (ell - 1) / 2
}

/// `C(ℓ+k−2, k−1)·μ − (k−1)·C(ℓ+k−2, k)`: the value of `μ(I^k)` for a
/// Freiman ideal with the given `ℓ` and `μ`.
pub fn mu_power_expected(ell: u64, mu: u64, k: u64) -> i128 {
    assert!(k >= 2, "the formula is stated for k ≥ 2");
    let top = ell + k - 2;
    binomial(top, k - 1) as i128 * mu as i128 - (k - 1) as i128 * binomial(top, k) as i128
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}
