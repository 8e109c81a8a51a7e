use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Output of one command invocation. Contains no timestamps, so a rerun with
/// the same arguments and seed serializes to the same bytes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    /// Arguments as given, without the program name.
    pub command: Vec<String>,
    pub seed: u64,
    pub results: BTreeMap<String, Value>,
    pub checks: BTreeMap<String, bool>,
    pub passed: bool,
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: u64) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            seed,
            results: BTreeMap::new(),
            checks: BTreeMap::new(),
            passed: true,
        }
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.results.insert(key.to_string(), v);
        self
    }

    pub fn check(&mut self, key: &str, ok: bool) -> &mut Self {
        self.checks.insert(key.to_string(), ok);
        self.passed &= ok;
        self
    }

    /// Arguments that reproduce this run, with the seed made explicit.
    pub fn rerun_args(&self) -> Vec<String> {
        let mut args = vec!["--seed".to_string(), self.seed.to_string()];
        let mut skip = false;
        for a in &self.command {
            if skip {
                skip = false;
                continue;
            }
            if a == "--seed" {
                skip = true;
                continue;
            }
            if a.starts_with("--seed=") {
                continue;
            }
            args.push(a.clone());
        }
        args
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self)
        } else {
            serde_json::to_string(self)
        }
        .expect("reports serialize")
    }
}
