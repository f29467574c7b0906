//! Machine-readable report envelope emitted by every CLI subcommand.

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

/// Envelope printed on stdout: stable apart from `timing_ms`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub subcommand: String,
    pub verdict: Value,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(subcommand: &str, verdict: Value, timing_ms: u64) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            subcommand: subcommand.to_string(),
            verdict,
            timing_ms,
        }
    }
}

/// JSON Schema describing the report envelope (printed by `--json-schema`).
pub fn report_schema() -> Value {
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "fanout verification report",
        "type": "object",
        "required": ["schema_version", "subcommand", "verdict", "timing_ms"],
        "properties": {
            "schema_version": { "type": "string", "const": SCHEMA_VERSION },
            "subcommand": {
                "type": "string",
                "enum": [
                    "check-adequacy", "verify-hamiltonian", "verify-circuit",
                    "classify", "check-u3", "enumerate", "search5", "builtin"
                ]
            },
            "verdict": {
                "description": "subcommand-specific payload; every rational is a canonical \"p/q\" or \"p\" string, never a float",
                "type": ["object", "array"]
            },
            "timing_ms": { "type": "integer", "minimum": 0 }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_serializes_in_field_order() {
        let r = Report::new("builtin", json!({"names": []}), 3);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with("{\"schema_version\":\"1\",\"subcommand\":\"builtin\""));
    }

    #[test]
    fn schema_mentions_every_subcommand() {
        let schema = report_schema();
        let subs = schema["properties"]["subcommand"]["enum"].as_array().unwrap();
        assert_eq!(subs.len(), 8);
    }
}
