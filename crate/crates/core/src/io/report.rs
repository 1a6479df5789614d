use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::params::ComputationParams;

/// Hex SHA-256 of `bytes`.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Truncation bounds a report was computed at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParameters {
    pub max_bar_length: usize,
    pub max_u_power: usize,
    pub window: (i64, i64),
    /// `q` or `fp:<p>`.
    pub field: String,
}

impl From<&ComputationParams> for ReportParameters {
    fn from(p: &ComputationParams) -> Self {
        Self { max_bar_length: p.max_bar_length, max_u_power: p.max_u_power, window: p.window, field: p.field.to_string() }
    }
}

/// An input by name and the hash of its canonical document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

/// The JSON report written by every command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub parameters: ReportParameters,
    #[serde(default)]
    pub inputs: Vec<InputDigest>,
    /// Seeds of every randomized input, in the order they were used.
    #[serde(default)]
    pub seeds: Vec<u64>,
    pub result: serde_json::Value,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>, params: &ComputationParams, result: &impl Serialize) -> Self {
        Self {
            tool: "hhcyc".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            parameters: params.into(),
            inputs: Vec::new(),
            seeds: Vec::new(),
            result: serde_json::to_value(result).expect("results serialize"),
        }
    }

    /// Records an input by the hash of its canonical text.
    pub fn with_input(mut self, name: impl Into<String>, canonical: &str) -> Self {
        self.inputs.push(InputDigest { name: name.into(), sha256: digest(canonical.as_bytes()) });
        self
    }

    pub fn with_seeds(mut self, seeds: impl IntoIterator<Item = u64>) -> Self {
        self.seeds.extend(seeds);
        self
    }

    pub fn to_json(&self) -> String {
        super::to_json(self)
    }
}
