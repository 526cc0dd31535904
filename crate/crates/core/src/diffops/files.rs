//! Line-oriented operator, row and relation files: one expression per line, `#`
//! starts a comment, and a line may carry a `name:` prefix.

use super::{parse_operator, Mode, QDEOperator, Symbols};
use crate::model::ModelSpec;
use crate::quantum::Relation;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct NamedOperator {
    pub name: String,
    pub source: String,
    pub op: QDEOperator,
}

/// An operator file: the first `rank` entries generate the system, the rest are
/// consequences expected to annihilate the same series.
#[derive(Clone, Debug, PartialEq)]
pub struct OpsFile {
    pub generators: Vec<NamedOperator>,
    pub consequences: Vec<NamedOperator>,
}

impl OpsFile {
    pub fn all(&self) -> impl Iterator<Item = &NamedOperator> {
        self.generators.iter().chain(&self.consequences)
    }
}

/// Non-empty lines as `(line number, name, expression)`.
fn entries(text: &str) -> Vec<(usize, Option<String>, String)> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.split_once(':') {
            Some((name, expr)) if !name.trim().is_empty() => {
                out.push((n + 1, Some(name.trim().to_string()), expr.trim().to_string()))
            }
            _ => out.push((n + 1, None, line.to_string())),
        }
    }
    out
}

fn parse_lines(text: &str, symbols: &Symbols) -> Result<Vec<NamedOperator>> {
    entries(text)
        .into_iter()
        .enumerate()
        .map(|(k, (line, name, src))| {
            let op = parse_operator(&src, symbols).map_err(|error| Error::ParseLine { line, error })?;
            Ok(NamedOperator { name: name.unwrap_or_else(|| format!("#{}", k + 1)), source: src, op })
        })
        .collect()
}

pub fn parse_ops_file(text: &str, model: &ModelSpec) -> Result<OpsFile> {
    let mut ops = parse_lines(text, &Symbols::for_model(model, Mode::Operator))?;
    let r = model.rank();
    if ops.len() < r {
        return Err(Error::Shape(format!("operator file lists {} operators, need at least {r}", ops.len())));
    }
    let consequences = ops.split_off(r);
    Ok(OpsFile { generators: ops, consequences })
}

/// Row operators `P_0, ..., P_s` with `J_i = P_i J`; the last must be `1`.
pub fn parse_rows_file(text: &str, model: &ModelSpec) -> Result<Vec<QDEOperator>> {
    let ops = parse_lines(text, &Symbols::for_model(model, Mode::Operator))?;
    if ops.len() != model.len() {
        return Err(Error::Shape(format!("row file lists {} rows, model has {}", ops.len(), model.len())));
    }
    if ops.last().map(|o| &o.op) != Some(&QDEOperator::one(model.rank())) {
        return Err(Error::Shape("last row operator must be 1".into()));
    }
    Ok(ops.into_iter().map(|o| o.op).collect())
}

pub fn parse_relations_file(text: &str, model: &ModelSpec) -> Result<Vec<(String, Relation)>> {
    let ops = parse_lines(text, &Symbols::for_model(model, Mode::Relation))?;
    Ok(ops.into_iter().map(|o| (o.source, o.op.symbol())).collect())
}
