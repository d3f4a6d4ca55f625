//! JSON reports emitted with `--format json`.
//!
//! Every report has the envelope `{schema_version, command, inputs, results,
//! timing_ms}`; `schema/report.schema.json` describes all of them.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use windmill::decomp::OrbitEntry;
use windmill::Solution;

pub const SCHEMA_VERSION: u32 = 1;

/// The schema shipped with this version of the tool.
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Value,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: &str, inputs: Map<String, Value>, results: Value, timing_ms: f64) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_owned(),
            inputs,
            results,
            timing_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub rep: [u64; 4],
    pub size: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeResults {
    pub p: u64,
    pub count: u64,
    pub solutions: Vec<[u64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orbits: Option<Vec<OrbitJson>>,
}

pub fn quad(s: &Solution) -> [u64; 4] {
    let (a, b, c, d) = s.tuple();
    [a, b, c, d]
}

impl DecomposeResults {
    pub fn new(p: u64, sols: &[Solution], orbits: Option<&[OrbitEntry]>) -> Self {
        DecomposeResults {
            p,
            count: sols.len() as u64,
            solutions: sols.iter().map(quad).collect(),
            orbits: orbits.map(|os| {
                os.iter()
                    .map(|o| OrbitJson {
                        rep: quad(&o.rep),
                        size: o.size,
                    })
                    .collect()
            }),
        }
    }
}
