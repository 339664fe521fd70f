//! Reports produced by the `check` and `enumerate` commands, with a
//! `key: value` text rendering that parses back to the same value.
//!
//! The text form flattens the JSON form: nested objects and non-empty
//! arrays of objects become dotted keys (`strata.0.n`), and every other
//! value is written as compact JSON.

use freiman_core::classify::{ChainWitness, Classification, Verdict};
use freiman_core::{FreimanReport, IndexSet};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TextError {
    #[error("line {line}: expected `key: value`")]
    Shape { line: usize },
    #[error("line {line}: {source}")]
    Value { line: usize, source: serde_json::Error },
    #[error("line {line}: key `{key}` conflicts with an earlier line")]
    Conflict { line: usize, key: String },
    #[error(transparent)]
    Schema(serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub edges: usize,
    /// A perfect matching exists and the right side was relabeled along it.
    pub paired: bool,
    pub connected: Option<bool>,
    pub unmixed: Option<bool>,
    pub cohen_macaulay: Option<bool>,
    pub covers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationSummary {
    pub verdict: Verdict,
    pub blocks: Vec<IndexSet>,
    /// Original indices of the pairs kept by the reduction.
    pub kept: Vec<usize>,
    /// In the reduced graph's indices.
    pub chain_witness: Option<ChainWitness>,
}

impl From<&Classification> for ClassificationSummary {
    fn from(c: &Classification) -> Self {
        ClassificationSummary {
            verdict: c.verdict,
            blocks: c.blocks.iter().map(|b| b.indices).collect(),
            kept: c.kept.clone(),
            chain_witness: c.chain_witness.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub graph: GraphSummary,
    /// Direct computation; absent when the cover ideal is not equigenerated.
    pub freiman: Option<FreimanReport>,
    /// Structural verdict; absent when its hypotheses fail.
    pub classification: Option<ClassificationSummary>,
    pub notes: Vec<String>,
    pub elapsed_us: u64,
}

impl Report {
    /// 0 Freiman, 1 not Freiman, 2 structural hypotheses unmet.
    pub fn exit_code(&self) -> u8 {
        match &self.classification {
            Some(c) if c.verdict.is_freiman() => 0,
            Some(_) => 1,
            None => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub n: usize,
    pub graphs: usize,
    pub connected_unmixed: usize,
    pub almost_complete_cm: usize,
    pub reduces_to_almost_complete_cm: usize,
    pub not_freiman: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub max_n: usize,
    pub strata: Vec<Stratum>,
    /// Graph files of graphs whose structural and direct verdicts differ.
    pub disagreements: Vec<String>,
}

impl CorpusSummary {
    pub fn exit_code(&self) -> u8 {
        u8::from(!self.disagreements.is_empty())
    }
}

pub fn to_text<T: Serialize>(value: &T) -> String {
    let mut out = String::new();
    let json = serde_json::to_value(value).expect("reports serialize");
    flatten("", &json, &mut out);
    out
}

fn flatten(prefix: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
            for (k, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{k}"), v, out);
            }
        }
        other => {
            out.push_str(prefix);
            out.push_str(": ");
            out.push_str(&other.to_string());
            out.push('\n');
        }
    }
}

pub fn from_text<T: DeserializeOwned>(text: &str) -> Result<T, TextError> {
    let mut root = Map::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (key, raw) = line.split_once(": ").ok_or(TextError::Shape { line: line_no })?;
        let value: Value = serde_json::from_str(raw).map_err(|source| TextError::Value { line: line_no, source })?;
        let conflict = || TextError::Conflict { line: line_no, key: key.to_string() };
        let mut parts: Vec<&str> = key.split('.').collect();
        let leaf = parts.pop().expect("split yields at least one part");
        let mut node = &mut root;
        for part in parts {
            let entry = node.entry(part).or_insert_with(|| Value::Object(Map::new()));
            node = entry.as_object_mut().ok_or_else(conflict)?;
        }
        if node.insert(leaf.to_string(), value).is_some() {
            return Err(conflict());
        }
    }
    serde_json::from_value(restore_arrays(Value::Object(root))).map_err(TextError::Schema)
}

/// Turns objects keyed `0..len` back into arrays.
fn restore_arrays(value: Value) -> Value {
    let Value::Object(map) = value else { return value };
    let indexed = !map.is_empty() && (0..map.len()).all(|k| map.contains_key(&k.to_string()));
    if indexed {
        let mut map = map;
        let items = (0..map.len()).map(|k| restore_arrays(map.remove(&k.to_string()).expect("checked"))).collect();
        return Value::Array(items);
    }
    Value::Object(map.into_iter().map(|(k, v)| (k, restore_arrays(v))).collect())
}
