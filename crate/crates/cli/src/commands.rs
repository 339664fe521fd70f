use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use freiman_core::classify::{self, CmStatus, Verdict};
use freiman_core::covers::{self, CoverError};
use freiman_core::graph::{self, GraphError, NoPairing};
use freiman_core::ideal::{self, ExchangeError, IdealError};
use freiman_core::{BipartiteGraph, Limits, MonomialIdeal};
use serde::Serialize;
use thiserror::Error;

use crate::report::{ClassificationSummary, CorpusSummary, GraphSummary, Report, Stratum};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Graph { path: PathBuf, source: GraphError },
    #[error(transparent)]
    Enumeration(GraphError),
    #[error(transparent)]
    Pairing(#[from] NoPairing),
    #[error(transparent)]
    Covers(#[from] CoverError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Exchange(#[from] ExchangeError),
    #[error(transparent)]
    Classify(#[from] classify::ClassifyError),
    #[error("structural verdict {structural:?} contradicts direct deficiency {deficiency}")]
    Contradiction { structural: Verdict, deficiency: i64 },
}

fn load(path: &Path) -> Result<freiman_core::RawBipartiteGraph, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    graph::read_graph(&text).map_err(|source| CliError::Graph { path: path.to_owned(), source })
}

pub fn check(path: &Path, limits: &Limits) -> Result<Report, CliError> {
    let start = Instant::now();
    let raw = load(path)?;
    let g = match graph::find_pairing(&raw) {
        Ok(g) => g,
        Err(e @ (NoPairing::UnequalSides { .. } | NoPairing::NoPerfectMatching { .. })) => {
            return Ok(Report {
                graph: GraphSummary {
                    n: raw.left_size.max(raw.right_size),
                    edges: raw.edges.len(),
                    paired: false,
                    connected: None,
                    unmixed: None,
                    cohen_macaulay: None,
                    covers: None,
                },
                freiman: None,
                classification: None,
                notes: vec![format!("{e}: structural theorem not applicable")],
                elapsed_us: elapsed_us(start),
            });
        }
        Err(e) => return Err(e.into()),
    };
    let mut report = analyze(&g, limits)?;
    report.elapsed_us = elapsed_us(start);
    Ok(report)
}

fn analyze(g: &BipartiteGraph, limits: &Limits) -> Result<Report, CliError> {
    let connected = graph::is_connected(g);
    let unmixed = covers::is_unmixed_with(g, limits)?.is_unmixed();
    let cover_count = covers::minimal_vertex_covers_with(g, limits)?.len();
    let cover_ideal = ideal::cover_ideal_with(g, limits)?;
    let freiman = match cover_ideal.is_equigenerated() {
        true => Some(ideal::freiman_report_with(&cover_ideal, limits)?),
        false => None,
    };
    let mut notes = Vec::new();
    let mut cohen_macaulay = None;
    let mut classification = None;
    if !connected {
        notes.push("disconnected: structural theorem not applicable".to_string());
    }
    if !unmixed {
        notes.push("not unmixed: structural theorem not applicable".to_string());
    }
    if connected && unmixed {
        cohen_macaulay = Some(matches!(classify::is_cm(g)?, CmStatus::CohenMacaulay { .. }));
        let c = classify::classify_structural(g)?;
        let direct = freiman.expect("unmixed cover ideals are equigenerated");
        if c.verdict.is_freiman() != direct.is_freiman {
            return Err(CliError::Contradiction { structural: c.verdict, deficiency: direct.deficiency });
        }
        classification = Some(ClassificationSummary::from(&c));
    }
    Ok(Report {
        graph: GraphSummary {
            n: g.n(),
            edges: g.edge_count(),
            paired: true,
            connected: Some(connected),
            unmixed: Some(unmixed),
            cohen_macaulay,
            covers: Some(cover_count),
        },
        freiman,
        classification,
        notes,
        elapsed_us: 0,
    })
}

fn elapsed_us(start: Instant) -> u64 {
    u64::try_from(start.elapsed().as_micros()).unwrap_or(u64::MAX)
}

pub fn enumerate(max_n: usize, limits: &Limits) -> Result<CorpusSummary, CliError> {
    let graphs = graph::enumerate_graphs_with(max_n, limits.enumeration_bound).map_err(CliError::Enumeration)?;
    let mut strata: Vec<Stratum> = (1..=max_n)
        .map(|n| Stratum {
            n,
            graphs: 0,
            connected_unmixed: 0,
            almost_complete_cm: 0,
            reduces_to_almost_complete_cm: 0,
            not_freiman: 0,
        })
        .collect();
    let mut disagreements = Vec::new();
    for g in graphs {
        let s = &mut strata[g.n() - 1];
        s.graphs += 1;
        if !graph::is_connected(&g) || !covers::is_unmixed_with(&g, limits)?.is_unmixed() {
            continue;
        }
        s.connected_unmixed += 1;
        let direct = ideal::freiman_report_with(&ideal::cover_ideal_with(&g, limits)?, limits)?;
        let verdict = classify::classify_structural(&g)?.verdict;
        match verdict {
            Verdict::AlmostCompleteCM => s.almost_complete_cm += 1,
            Verdict::ReducesToAlmostCompleteCM => s.reduces_to_almost_complete_cm += 1,
            Verdict::NotFreiman => s.not_freiman += 1,
        }
        if verdict.is_freiman() != direct.is_freiman {
            disagreements.push(g.to_graph_file());
        }
    }
    Ok(CorpusSummary { max_n, strata, disagreements })
}

/// The `k`-th power of a cover ideal with the counts printed alongside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerListing {
    pub power: u32,
    pub mu: usize,
    pub ell: usize,
    /// Least possible `μ(I^k)` given `μ(I)` and `ℓ(I)`.
    pub bound: i128,
    #[serde(skip)]
    pub ideal: MonomialIdeal,
    pub generators: Vec<Vec<u32>>,
}

pub fn power(path: &Path, k: u32, limits: &Limits) -> Result<PowerListing, CliError> {
    let g = graph::find_pairing(&load(path)?)?;
    let base = ideal::cover_ideal_with(&g, limits)?;
    let ell = ideal::analytic_spread(&base)?;
    let p = ideal::power_with(&base, k, limits)?;
    Ok(PowerListing {
        power: k,
        mu: p.mu(),
        ell,
        bound: match k {
            1 => base.mu() as i128,
            _ => ideal::mu_power_expected(ell as u64, base.mu() as u64, u64::from(k)),
        },
        generators: p.generators().iter().map(|e| e.as_slice().to_vec()).collect(),
        ideal: p,
    })
}

impl PowerListing {
    pub fn to_text(&self) -> Result<String, CliError> {
        let k = self.power;
        let mut out = format!("# mu(I^{k}) = {}\n# ell = {}\n# bound = {}\n", self.mu, self.ell, self.bound);
        out.push_str(&ideal::write_exchange(&self.ideal)?);
        Ok(out)
    }
}
