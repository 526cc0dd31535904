//! Data files compiled into the library: models, operator systems, row operators and
//! relation lists.

use std::path::{Path, PathBuf};

use crate::model::{builtin_model, load_model, ModelSpec};
use crate::{Error, Result};

macro_rules! data {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../data/", $name)))),*]
    };
}

const FILES: &[(&str, &str)] = data![
    "models/cp1.model",
    "models/cp2.model",
    "models/cp3.model",
    "models/cp4.model",
    "models/cp5.model",
    "models/f3.model",
    "models/sigma1.model",
    "models/gr24.model",
    "ops/cpm.ops",
    "ops/f3.ops",
    "ops/sigma1.ops",
    "rows/cp1.rows",
    "rows/cp2.rows",
    "rows/cp3.rows",
    "rows/cp4.rows",
    "rows/cp5.rows",
    "rows/f3.rows",
    "rows/sigma1.rows",
    "relations/f3.rel",
    "relations/gr24.rel",
    "relations/sigma1.rel",
];

/// Paths of every shipped file, relative to the data root.
pub fn shipped_files() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

/// Raw text of a shipped file such as `ops/f3.ops`.
pub fn shipped_text(path: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == path).map(|(_, t)| *t)
}

fn find_in(dir: &str, file: &str) -> Option<&'static str> {
    shipped_text(&format!("{dir}/{file}"))
}

/// Shipped model by name.
pub fn shipped_model(name: &str) -> Option<Result<ModelSpec>> {
    find_in("models", &format!("{name}.model")).map(|t| load_model(t).map_err(Error::from))
}

/// `m` of a `cp<m>` model name.
pub fn cp_dimension(name: &str) -> Option<u32> {
    name.strip_prefix("cp").and_then(|s| s.parse().ok()).filter(|&m| m >= 1)
}

/// Substitutes `{m}` and `{m+1}` in a template.
pub fn expand_template(text: &str, m: u32) -> String {
    text.replace("{m+1}", &(m + 1).to_string()).replace("{m}", &m.to_string())
}

/// Shipped operator file for `model`; `cp<m>` models use the `cpm.ops` template.
pub fn shipped_ops(model: &ModelSpec) -> Option<String> {
    if let Some(m) = cp_dimension(model.name()) {
        return find_in("ops", "cpm.ops").map(|t| expand_template(t, m));
    }
    find_in("ops", &format!("{}.ops", model.name())).map(String::from)
}

/// Shipped row operators; `cp<m>` rows `θ^m, ..., θ, 1` are produced for any `m`.
pub fn shipped_rows(model: &ModelSpec) -> Option<String> {
    if let Some(t) = find_in("rows", &format!("{}.rows", model.name())) {
        return Some(t.to_string());
    }
    cp_dimension(model.name()).map(|m| {
        (0..=m)
            .map(|i| match m - i {
                0 => "1".to_string(),
                1 => "D1".to_string(),
                e => format!("D1^{e}"),
            })
            .collect::<Vec<_>>()
            .join("\n")
    })
}

pub fn shipped_relations(model: &ModelSpec) -> Option<&'static str> {
    find_in("relations", &format!("{}.rel", model.name()))
}

/// Text of a data file argument: an existing path is read, otherwise the name is
/// looked up among the shipped files of the matching kind (`cpm.ops` is expanded
/// for `model`).
pub fn resolve_text(arg: &str, model: &ModelSpec) -> Result<String> {
    let path = Path::new(arg);
    if path.exists() {
        return std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{arg}: {e}")));
    }
    let kind = match path.extension().and_then(|e| e.to_str()) {
        Some("ops") => "ops",
        Some("rows") => "rows",
        Some("rel") => "relations",
        Some("model") => "models",
        _ => return Err(Error::Io(format!("{arg}: no such file"))),
    };
    let text = find_in(kind, arg).ok_or_else(|| Error::Io(format!("{arg}: no such file")))?;
    Ok(match cp_dimension(model.name()) {
        Some(m) if arg == "cpm.ops" => expand_template(text, m),
        _ => text.to_string(),
    })
}

/// Directories listed in `QCOH_MODEL_PATH`.
pub fn model_path() -> Vec<PathBuf> {
    std::env::var_os("QCOH_MODEL_PATH").map(|v| std::env::split_paths(&v).collect()).unwrap_or_default()
}

/// Resolves a model argument: an existing file, then `<name>.model` in the
/// `QCOH_MODEL_PATH` directories, then the shipped models, then the built-ins.
pub fn resolve_model(arg: &str) -> Result<ModelSpec> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{arg}: {e}")))?;
        return Ok(load_model(&text)?);
    }
    for dir in model_path() {
        let p = dir.join(format!("{arg}.model"));
        if p.is_file() {
            let text = std::fs::read_to_string(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            return Ok(load_model(&text)?);
        }
    }
    match shipped_model(arg) {
        Some(m) => m,
        None => builtin_model(arg),
    }
}
