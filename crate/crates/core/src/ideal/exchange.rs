//! Plain-text exchange format for equigenerated ideals.
//!
//! ```text
//! vars 4 deg 2
//! 1 1 0 0
//! 1 0 0 1
//! 0 0 1 1
//! ```
//!
//! One generator per line, in the ideal's canonical order. Lines starting
//! with `#` are ignored on input and never written.

use std::fmt::Write as _;

use thiserror::Error;

use super::{ExponentVector, IdealError, MonomialIdeal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExchangeError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("only equigenerated ideals can be written")]
    NotEquigenerated,
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

pub fn write_exchange(ideal: &MonomialIdeal) -> Result<String, ExchangeError> {
    let deg = ideal.degree().ok_or(ExchangeError::NotEquigenerated)?;
    let mut out = format!("vars {} deg {}\n", ideal.n_vars(), deg);
    for g in ideal.generators() {
        let row: Vec<String> = g.as_slice().iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    Ok(out)
}

pub fn parse_exchange(text: &str) -> Result<MonomialIdeal, ExchangeError> {
    let mut header: Option<(usize, u32)> = None;
    let mut gens = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| ExchangeError::Syntax { line: line_no, message };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                let ["vars", vars, "deg", deg] = fields[..] else {
                    return Err(err("expected `vars <count> deg <degree>`".into()));
                };
                let vars = vars.parse().map_err(|_| err(format!("bad variable count `{vars}`")))?;
                let deg = deg.parse().map_err(|_| err(format!("bad degree `{deg}`")))?;
                header = Some((vars, deg));
            }
            Some((vars, deg)) => {
                if fields.len() != vars {
                    return Err(err(format!("expected {vars} exponents, found {}", fields.len())));
                }
                let exps = fields
                    .iter()
                    .map(|f| f.parse::<u32>().map_err(|_| err(format!("bad exponent `{f}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                let v = ExponentVector::new(exps);
                if v.degree() != deg {
                    return Err(err(format!("generator has degree {}, header says {deg}", v.degree())));
                }
                gens.push(v);
            }
        }
    }
    let (vars, _) = header.ok_or(ExchangeError::Syntax { line: 0, message: "missing header".into() })?;
    Ok(MonomialIdeal::from_generators(vars, gens)?)
}
