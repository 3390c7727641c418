//! Command reports: free-form text lines for people, a JSON tree for machines, and the list
//! of checks that decides the exit status.

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Structured,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub algebra: Value,
    pub parameters: Map<String, Value>,
    pub results: Map<String, Value>,
    pub lines: Vec<String>,
    pub checks: Vec<Check>,
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            algebra: Value::Null,
            ..Report::default()
        }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn result(&mut self, key: &str, value: Value) {
        self.results.insert(key.to_string(), value);
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn structured(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "status": status(c.passed), "detail": c.detail}))
            .collect();
        json!({
            "command": self.command,
            "algebra": self.algebra,
            "parameters": self.parameters,
            "results": self.results,
            "checks": checks,
            "status": status(self.passed()),
        })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Structured => {
                let mut out = serde_json::to_string_pretty(&self.structured()).expect("report serializes");
                out.push('\n');
                out
            }
            OutputFormat::Text => {
                let mut out = String::new();
                for l in &self.lines {
                    out.push_str(l);
                    out.push('\n');
                }
                if !self.checks.is_empty() && !self.lines.is_empty() {
                    out.push('\n');
                }
                for c in &self.checks {
                    out.push_str(&format!("{}  {}", status(c.passed), c.name));
                    if let Some(d) = &c.detail {
                        out.push_str(&format!(": {d}"));
                    }
                    out.push('\n');
                }
                let failed = self.checks.iter().filter(|c| !c.passed).count();
                out.push_str(&format!(
                    "{}: {} checks, {} failed\n",
                    status(self.passed()),
                    self.checks.len(),
                    failed
                ));
                out
            }
        }
    }
}
