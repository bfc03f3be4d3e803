//! Report model with deterministic JSON and Markdown renderings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use swalg_core::opalg::Rational;

pub const SCHEMA: &str = "swalg.report/v1";

/// Rounds to 12 significant digits so reports do not depend on the last bits
/// of a floating-point reduction.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(format!("{x}"));
    }
    if x == 0.0 {
        return Value::from(0.0);
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    Value::from(rounded)
}

/// Scalars that can appear in a report.
pub trait ReportScalar {
    fn report(&self) -> Value;
}

impl ReportScalar for f64 {
    fn report(&self) -> Value {
        num(*self)
    }
}

impl ReportScalar for Rational {
    fn report(&self) -> Value {
        Value::String(self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub indices: Vec<usize>,
    pub status: Status,
    /// Residual term count for symbolic checks, a relative error otherwise.
    pub measure: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// A documented discrepancy that is reported but does not fail the run.
#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub name: String,
    pub description: String,
    pub data: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub findings: usize,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool: Tool,
    pub command: String,
    pub config: Value,
    pub mode: String,
    pub notes: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub findings: Vec<Finding>,
    pub tables: Vec<Table>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Value>,
}

impl Report {
    pub fn new(command: &str, config: Value, mode: &str, notes: Vec<String>) -> Self {
        Report {
            schema: SCHEMA,
            tool: Tool {
                name: "swalg",
                version: env!("CARGO_PKG_VERSION"),
            },
            command: command.to_string(),
            config,
            mode: mode.to_string(),
            notes,
            checks: Vec::new(),
            findings: Vec::new(),
            tables: Vec::new(),
            summary: Summary {
                checks: 0,
                passed: 0,
                failed: 0,
                findings: 0,
                status: Status::Pass,
            },
            timing: None,
        }
    }

    pub fn finish(&mut self) {
        let passed = self
            .checks
            .iter()
            .filter(|c| c.status == Status::Pass)
            .count();
        self.summary = Summary {
            checks: self.checks.len(),
            passed,
            failed: self.checks.len() - passed,
            findings: self.findings.len(),
            status: Status::from_bool(passed == self.checks.len()),
        };
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# swalg {} report\n", self.command);
        let _ = writeln!(
            out,
            "- status: **{}** ({} of {} checks passed, {} findings)",
            status_text(self.summary.status),
            self.summary.passed,
            self.summary.checks,
            self.summary.findings
        );
        let _ = writeln!(out, "- mode: {}", self.mode);
        let _ = writeln!(out, "- config: `{}`", self.config);
        for note in &self.notes {
            let _ = writeln!(out, "- note: {note}");
        }

        if !self.checks.is_empty() {
            let _ = writeln!(out, "\n## Checks\n");
            let _ = writeln!(
                out,
                "| suite | check | indices | status | measure | tolerance | detail |"
            );
            let _ = writeln!(out, "|---|---|---|---|---|---|---|");
            for c in &self.checks {
                let idx: Vec<String> = c.indices.iter().map(|i| i.to_string()).collect();
                let _ = writeln!(
                    out,
                    "| {} | `{}` | {} | {} | {} | {} | {} |",
                    c.suite,
                    c.name,
                    idx.join(","),
                    status_text(c.status),
                    cell(&c.measure),
                    c.tolerance.as_ref().map(cell).unwrap_or_default(),
                    c.detail.as_deref().unwrap_or("").replace('|', "\\|")
                );
            }
        }

        if !self.findings.is_empty() {
            let _ = writeln!(out, "\n## Findings\n");
            for f in &self.findings {
                let _ = writeln!(out, "- **{}**: {}", f.name, f.description);
                let _ = writeln!(out, "  `{}`", f.data);
            }
        }

        for t in &self.tables {
            let _ = writeln!(out, "\n## {}\n", t.name);
            let _ = writeln!(out, "| {} |", t.columns.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(t.columns.len()));
            for row in &t.rows {
                let cells: Vec<String> = row.iter().map(cell).collect();
                let _ = writeln!(out, "| {} |", cells.join(" | "));
            }
        }
        out
    }
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.replace('|', "\\|"),
        other => other.to_string(),
    }
}
