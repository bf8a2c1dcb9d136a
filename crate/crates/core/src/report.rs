//! Run reports in text and JSON form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::linalg::{format_vector, Subspace};
use crate::model::{Check, CheckReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// The result of one command: inputs, computed facts and checked claims.
#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub command: String,
    /// Input name and its sha256.
    pub inputs: Vec<(String, String)>,
    pub facts: BTreeMap<String, Value>,
    pub claims: CheckReport,
}

pub fn subspace_value(s: &Subspace) -> Value {
    Value::Array(s.basis().iter().map(|v| Value::String(format_vector(v))).collect())
}

fn check_value(c: &Check) -> Value {
    let mut v = json!({
        "description": c.description,
        "status": c.status.as_str(),
    });
    if let Some(n) = &c.note {
        v["note"] = Value::String(n.clone());
    }
    if let Some(w) = &c.violation {
        v["violation"] = json!({
            "indices": w.indices,
            "lhs": format_vector(&w.lhs),
            "rhs": format_vector(&w.rhs),
        });
    }
    v
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.push((name.to_string(), sha256_hex(bytes)));
    }

    pub fn fact(&mut self, key: &str, value: impl Into<Value>) {
        self.facts.insert(key.to_string(), value.into());
    }

    pub fn extend(&mut self, claims: &CheckReport) {
        self.claims.checks.extend(claims.checks.iter().cloned());
    }

    pub fn passed(&self) -> bool {
        self.claims.passed()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let claims: serde_json::Map<String, Value> = self
            .claims
            .checks
            .iter()
            .map(|c| (c.id.clone(), check_value(c)))
            .collect();
        let inputs: Vec<Value> = self
            .inputs
            .iter()
            .map(|(n, d)| json!({"name": n, "sha256": d}))
            .collect();
        json!({
            "claims": claims,
            "command": self.command,
            "facts": self.facts,
            "inputs": inputs,
            "passed": self.passed(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (n, d) in &self.inputs {
            let _ = writeln!(out, "input: {n} sha256:{d}");
        }
        for (k, v) in &self.facts {
            let _ = writeln!(out, "{k}: {}", text_value(v));
        }
        for c in &self.claims.checks {
            let _ = write!(out, "[{}] {}: {}", c.status.as_str().to_uppercase(), c.id, c.description);
            if let Some(n) = &c.note {
                let _ = write!(out, " ({n})");
            }
            out.push('\n');
            if let Some(w) = &c.violation {
                let _ = writeln!(
                    out,
                    "    at indices {:?}: lhs {} rhs {}",
                    w.indices,
                    format_vector(&w.lhs),
                    format_vector(&w.rhs)
                );
            }
        }
        let _ = writeln!(out, "result: {}", if self.passed() { "pass" } else { "fail" });
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json");
                s.push('\n');
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CheckStatus;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn rendering_is_sorted_and_stable() {
        let mut r = RunReport::new("validate");
        r.input("x.json", b"abc");
        r.fact("zeta", "last");
        r.fact("alpha", 1);
        r.claims.push(Check::pass("b", "second"));
        r.claims.push(Check::pass("a", "first").with_status(CheckStatus::Fail).with_note("why"));
        let text = r.render(Format::Text);
        assert!(text.find("alpha").unwrap() < text.find("zeta").unwrap());
        assert!(text.contains("[FAIL] a: first (why)"));
        assert!(text.ends_with("result: fail\n"));
        let json = r.render(Format::Json);
        assert!(json.find("\"claims\"").unwrap() < json.find("\"command\"").unwrap());
        assert_eq!(r.render(Format::Json), json);
        assert_eq!(r.exit_code(), 1);
    }
}
