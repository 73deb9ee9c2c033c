//! Plain key-value reports, printed as text or JSON.

use serde_json::{Map, Value};

use crate::suites::SuiteReport;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_value(&self) -> Value {
        Value::Object(self.fields.iter().cloned().collect::<Map<_, _>>())
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return pretty(&self.to_value());
        }
        self.fields
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}\n"),
                other => format!("{k}: {other}\n"),
            })
            .collect()
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn render_verification(reports: &[SuiteReport], json: bool) -> String {
    let passed = reports.iter().all(|r| r.passed);
    if json {
        return pretty(&serde_json::json!({ "passed": passed, "suites": reports }));
    }
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!("{} (criterion {}): {}\n", r.suite, r.criterion, verdict(r.passed)));
        for c in &r.checks {
            out.push_str(&format!("  {} {}: {}\n", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail));
        }
    }
    let good = reports.iter().filter(|r| r.passed).count();
    out.push_str(&format!("result: {} ({good}/{} suites)\n", verdict(passed), reports.len()));
    out
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
