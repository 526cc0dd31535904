use std::fmt;
use std::io::{ErrorKind, Write};
use std::path::Path;

use qcoh::report::{all_passed, Report};
use serde_json::{json, Value};

use crate::Format;

/// A command failure that is not a check result.
#[derive(Debug)]
pub enum CliError {
    /// A computation ran into an inconsistency; counts as a failed check.
    Math(String),
    /// Usage, I/O or parse problem.
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Math(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Math(m) | CliError::Input(m) => f.write_str(m),
        }
    }
}

impl From<qcoh::Error> for CliError {
    fn from(e: qcoh::Error) -> Self {
        match e {
            qcoh::Error::Check(_) | qcoh::Error::Inconsistent { .. } | qcoh::Error::NonInvertible(_) => {
                CliError::Math(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<qcoh::ModelError> for CliError {
    fn from(e: qcoh::ModelError) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult = Result<bool, CliError>;

/// `{model, reports, passed, ...extra}`.
pub fn envelope(model: &str, reports: &[Report], extra: Vec<(&str, Value)>) -> Value {
    let mut v = json!({
        "model": model,
        "passed": all_passed(reports),
        "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
    });
    for (k, x) in extra {
        v[k] = x;
    }
    v
}

fn text_lines(v: &Value) -> String {
    let mut out = String::new();
    if let Some(m) = v.get("model").and_then(Value::as_str) {
        out.push_str(&format!("model {m}\n"));
    }
    if let Some(reports) = v.get("reports").and_then(Value::as_array) {
        for r in reports {
            let check = r["check"].as_str().unwrap_or("?");
            let status = r["status"].as_str().unwrap_or("?");
            out.push_str(&format!("{check:<24} {status}\n"));
            for w in r["witnesses"].as_array().into_iter().flatten().take(3) {
                out.push_str(&format!("    {w}\n"));
            }
        }
    }
    out
}

/// Writes `value` to `out` (full JSON) or standard output. With a file target, only
/// the reports are echoed.
pub fn emit(value: &Value, out: Option<&Path>, format: Format) -> Result<(), CliError> {
    let pretty = serde_json::to_string_pretty(value).expect("JSON serializes");
    if let Some(path) = out {
        std::fs::write(path, pretty + "\n").map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let summary = json!({ "model": value["model"], "passed": value["passed"], "reports": value["reports"], "out": path.display().to_string() });
        return print(&summary, format);
    }
    print(value, format)
}

pub fn print(value: &Value, format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => write_out(&(serde_json::to_string_pretty(value).expect("JSON serializes") + "\n")),
        Format::Text => write_out(&text_lines(value)),
    }
    Ok(())
}

/// Writes to standard output. A closed pipe ends the process quietly.
pub fn write_out(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("qcoh: writing output: {e}");
        std::process::exit(2);
    }
}
