//! Verdict reports shared by the CLI and the corpus driver.

use serde::{Deserialize, Serialize};

/// One named check with its outcome and, on failure, a replayable witness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    /// Witness or counterexample rendered from the structures involved.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// The mathematical statement the check decides.
    pub law: String,
}

/// A full command report: echo of the invocation, per-check entries, the
/// overall verdict, and timing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub verdict: String,
    pub checks: Vec<CheckEntry>,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            verdict: "pass".into(),
            checks: Vec::new(),
            timing_ms: 0.0,
        }
    }

    pub fn push(&mut self, name: impl Into<String>, law: impl Into<String>, pass: bool, witness: Option<String>) {
        if !pass {
            self.verdict = "fail".into();
        }
        self.checks.push(CheckEntry { name: name.into(), pass, witness, law: law.into() });
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {} — {}\n",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.law
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!("       witness: {}\n", w));
            }
        }
        out.push_str(&format!("verdict: {} ({:.1} ms)\n", self.verdict, self.timing_ms));
        out
    }
}
