use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::JobConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub conventions: Vec<String>,
    pub notes: Vec<String>,
}

/// Everything printed by a successful command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema_version: u32,
    pub command: String,
    pub input: JobConfig,
    pub result: Value,
    pub provenance: Provenance,
    pub tool_version: String,
}

impl Envelope {
    pub fn new(command: &str, input: JobConfig, result: Value, provenance: Provenance) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input,
            result,
            provenance,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// Checks the fields a consumer relies on after a round trip.
    pub fn validate(&self) -> Result<(), String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!("unknown schema version {}", self.schema_version));
        }
        if self.command.is_empty() {
            return Err("empty command".into());
        }
        if self.result.is_null() {
            return Err("missing result".into());
        }
        Ok(())
    }
}
