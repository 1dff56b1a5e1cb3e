//! Command reports in text and JSON form.

use std::fmt::Write as _;

use satmat_core::search::Budget;
use satmat_core::BitMatrix;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BudgetStatus {
    pub max_nodes: u64,
    pub max_seconds: f64,
    pub exhausted: bool,
}

impl BudgetStatus {
    pub fn new(budget: &Budget, exhausted: bool) -> Self {
        BudgetStatus {
            max_nodes: budget.max_nodes,
            max_seconds: budget.max_seconds,
            exhausted,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
    pub budget: Option<BudgetStatus>,
    pub timing: Map<String, Value>,
}

/// Rows of a matrix as binary strings.
pub fn rows_json(m: &BitMatrix) -> Value {
    json!(m.row_strings())
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            ..Report::default()
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, Status::from_bool(ok), detail));
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "status": c.status.as_str(), "detail": c.detail}))
            .collect();
        let budget = match &self.budget {
            Some(b) => json!({
                "max_nodes": (b.max_nodes != u64::MAX).then_some(b.max_nodes),
                "max_seconds": b.max_seconds.is_finite().then_some(b.max_seconds),
                "exhausted": b.exhausted,
            }),
            None => Value::Null,
        };
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": checks,
            "timing": self.timing,
            "budget": budget,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (k, v) in &self.inputs {
            write_value(&mut out, k, v, 0);
        }
        for (k, v) in &self.results {
            write_value(&mut out, k, v, 0);
        }
        if let Some(b) = &self.budget {
            let nodes = if b.max_nodes == u64::MAX {
                "unlimited".to_string()
            } else {
                b.max_nodes.to_string()
            };
            let seconds = if b.max_seconds.is_finite() {
                b.max_seconds.to_string()
            } else {
                "unlimited".to_string()
            };
            let state = if b.exhausted { "exhausted" } else { "within budget" };
            let _ = writeln!(out, "budget: {nodes} nodes, {seconds} s, {state}");
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks:");
            for c in &self.checks {
                let _ = writeln!(out, "  [{}] {}: {}", c.status.as_str(), c.name, c.detail);
            }
        }
        out
    }
}

fn is_matrix_rows(v: &Value) -> bool {
    match v.as_array() {
        Some(rows) if !rows.is_empty() => rows.iter().all(|r| {
            r.as_str()
                .is_some_and(|s| !s.is_empty() && s.bytes().all(|b| b == b'0' || b == b'1'))
        }),
        _ => false,
    }
}

fn write_value(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, inner) in map {
                write_value(out, k, inner, depth + 1);
            }
        }
        _ if is_matrix_rows(v) => {
            let _ = writeln!(out, "{pad}{key}:");
            for r in v.as_array().into_iter().flatten() {
                let _ = writeln!(out, "{pad}  {}", r.as_str().unwrap_or_default());
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object()) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, item) in items.iter().enumerate() {
                write_value(out, &format!("[{}]", i + 1), item, depth + 1);
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_string) => {
            let _ = writeln!(out, "{pad}{key}:");
            for item in items {
                let _ = writeln!(out, "{pad}  - {}", item.as_str().unwrap_or_default());
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "{pad}{key}: {s}");
        }
        other => {
            let _ = writeln!(out, "{pad}{key}: {other}");
        }
    }
}
