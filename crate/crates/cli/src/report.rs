use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::Command;

#[derive(Serialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

/// Machine-readable record of one run. Keys serialize in sorted order.
#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<Input>,
    pub results: Value,
    pub verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

pub struct Outcome {
    pub text: String,
    pub results: Value,
    pub verdict: Option<bool>,
}

fn command_name(c: &Command) -> &'static str {
    use crate::{MorseCommand as M, ZeroCommand as Z};
    match c {
        Command::Check { .. } => "check",
        Command::Hh { .. } => "hh",
        Command::E1 { .. } => "e1",
        Command::Dbhom { .. } => "dbhom",
        Command::Mutate { .. } => "mutate",
        Command::Track { .. } => "track",
        Command::Spherical { .. } => "spherical",
        Command::Matching { .. } => "matching",
        Command::Braid { .. } => "braid",
        Command::Zerodim { command } => match command {
            Z::Fukaya { .. } => "zerodim fukaya",
            Z::Topology { .. } => "zerodim topology",
            Z::Phirel { .. } => "zerodim phirel",
            Z::Triangle { .. } => "zerodim triangle",
            Z::Orbit { .. } => "zerodim orbit",
        },
        Command::Morse { command } => match command {
            M::Cat { .. } => "morse cat",
            M::Fundamental { .. } => "morse fundamental",
            M::Verdier { .. } => "morse verdier",
            M::Cellular { .. } => "morse cellular",
        },
    }
}

impl RunReport {
    pub fn new(c: &Command) -> Self {
        RunReport { command: command_name(c).into(), inputs: Vec::new(), results: Value::Null, verdict: None, wall_ms: None }
    }

    pub fn add_input(&mut self, path: &str, content: &str) {
        let sha256 = Sha256::digest(content.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.push(Input { path: path.into(), sha256 });
    }

    /// Canonical JSON: struct fields and map keys sorted, two-space indent.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }
}
