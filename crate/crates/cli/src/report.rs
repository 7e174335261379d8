//! Structured command reports: stable JSON (schema 1) or a flat table.

use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub findings: Value,
    pub status: Value,
}

#[derive(Serialize, Clone)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl Report {
    pub fn new(command: &str, inputs: Vec<InputDigest>, findings: Value, code: i32, message: Option<&str>) -> Self {
        let status = if code == 0 {
            Value::String("ok".to_string())
        } else {
            serde_json::json!({ "error": code, "message": message.unwrap_or("") })
        };
        Report {
            schema: 1,
            command: command.to_string(),
            inputs,
            findings,
            status,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        s.push('\n');
        s
    }

    /// Flat key = value rendering; every finding key appears exactly once.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for input in &self.inputs {
            out.push_str(&format!("input: {} sha256={}\n", input.path, input.sha256));
        }
        out.push_str(&format!(
            "status: {}\n",
            serde_json::to_string(&self.status).expect("status renders")
        ));
        let mut lines = Vec::new();
        flatten("", &self.findings, &mut lines);
        for line in lines {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

fn flatten(prefix: &str, value: &Value, lines: &mut Vec<String>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, lines);
            }
        }
        leaf => {
            let rendered = serde_json::to_string(leaf).expect("leaf renders");
            if prefix.is_empty() {
                lines.push(rendered);
            } else {
                lines.push(format!("{prefix} = {rendered}"));
            }
        }
    }
}

pub fn digest_bytes(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut s = String::with_capacity(64);
    for b in digest {
        s.push_str(&format!("{b:02x}"));
    }
    s
}
