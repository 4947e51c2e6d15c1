//! Output envelopes and flat row types shared by the JSON and CSV writers.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::BoundExpr;
use crate::candidates::CandidateRecord;
use crate::census::CensusEntry;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub flags: Vec<String>,
    pub tool_version: String,
    pub schema_version: u32,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: Value, result: Value) -> Self {
        OutputRecord {
            command: command.to_string(),
            inputs,
            result,
            flags: Vec::new(),
            tool_version: TOOL_VERSION.to_string(),
            schema_version: SCHEMA_VERSION,
        }
    }

    pub fn with_flags(mut self, flags: Vec<String>) -> Self {
        self.flags = flags;
        self
    }

    /// One JSON line. Goes through `Value` so object keys come out sorted and
    /// re-serializing a parsed line reproduces it byte for byte.
    pub fn to_line(&self) -> String {
        serde_json::to_value(self)
            .and_then(|v| serde_json::to_string(&v))
            .expect("output records serialize")
    }
}

pub fn error_line(command: &str, kind: &str, message: &str) -> String {
    let v = json!({
        "command": command,
        "error": { "kind": kind, "message": message },
        "tool_version": TOOL_VERSION,
        "schema_version": SCHEMA_VERSION,
    });
    serde_json::to_string(&v).expect("error records serialize")
}

/// Flat row of a weight listing. Every field is a string so JSON and CSV
/// carry exactly the same values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRow {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub weight: String,
    pub dim: String,
}

impl From<&CensusEntry> for EntryRow {
    fn from(e: &CensusEntry) -> Self {
        EntryRow {
            lie_type: e.lie_type.to_string(),
            weight: e.weight.to_string(),
            dim: e.dim.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRow {
    pub p: String,
    #[serde(rename = "type")]
    pub lie_type: String,
    pub twist_e: String,
    pub t: String,
    pub group: String,
    pub weight: String,
    pub dim: String,
    /// `;`-separated
    pub flags: String,
    /// `;`-separated rule identifiers
    pub constraints: String,
}

impl From<&CandidateRecord> for CandidateRow {
    fn from(r: &CandidateRecord) -> Self {
        let d = &r.descriptor;
        CandidateRow {
            p: d.characteristic_p.to_string(),
            lie_type: d.lie_type.to_string(),
            twist_e: d.twist_e.to_string(),
            t: d.field_exponent_t.to_string(),
            group: d.to_string(),
            weight: r.weight.to_string(),
            dim: r.weyl_dim.to_string(),
            flags: r.flags.iter().map(|f| f.as_str()).collect::<Vec<_>>().join(";"),
            constraints: r.constraints_applied.join(";"),
        }
    }
}

pub fn bound_json(b: &BoundExpr) -> Value {
    json!({
        "symbolic": b.to_string(),
        "floor": b.floor_value.as_ref().map(|v| v.to_string()),
        "ceil": b.ceil_value.as_ref().map(|v| v.to_string()),
        "exceeds_budget": b.exceeds_budget,
        "flags": b.flags,
    })
}

pub fn bound_text(b: &BoundExpr) -> String {
    match (&b.floor_value, &b.ceil_value) {
        (Some(f), Some(c)) if f == c => format!("{b} = {f}"),
        (Some(f), Some(c)) => format!("{b}  (floor {f}, ceil {c})"),
        _ => format!("{b}  (symbolic only, over bit budget)"),
    }
}

pub fn csv_string<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize to csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}
