use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ModelError, ModelSpec};
use crate::algebra::rational::serde_str;
use crate::algebra::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisElement {
    pub label: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CupEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantumEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    #[serde(rename = "D")]
    pub degree: Vec<u32>,
    #[serde(with = "serde_str")]
    pub c: Rational,
}

/// On-disk model document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub dim: u32,
    pub rank: usize,
    pub basis: Vec<BasisElement>,
    pub pairing: Vec<Vec<i64>>,
    pub cup: Vec<CupEntry>,
    pub quantum: Vec<QuantumEntry>,
    pub chern: Vec<i64>,
    #[serde(default)]
    pub aliases: BTreeMap<String, String>,
}

impl ModelFile {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("model file serializes")
    }
}

/// Parses and validates a JSON model document.
pub fn load_model(text: &str) -> Result<ModelSpec, ModelError> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| ModelError::Schema(e.to_string()))?;
    ModelSpec::from_file(file)
}
