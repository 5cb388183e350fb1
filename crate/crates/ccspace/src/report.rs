//! Structured check results and deterministic report emission.
//!
//! A report is an ordered list of sections of key/value entries. The
//! same report emits byte-identical text or structured output on every
//! run; floats render with nine fractional digits.

use std::fmt::Write as _;

/// Outcome of a single machine check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The statement's precondition does not hold on this instance.
    NotApplicable,
    /// The check could not be run (missing inputs, size limits).
    NotEvaluated,
    /// The implementation is fine but the checked claim fails as stated;
    /// reported as a finding, promoted to a failure under --strict.
    Discrepancy,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not applicable",
            Verdict::NotEvaluated => "not evaluated",
            Verdict::Discrepancy => "discrepancy",
        }
    }

    pub fn is_failure(self) -> bool {
        matches!(self, Verdict::Fail | Verdict::Discrepancy)
    }
}

/// One named check with optional witness labels and a free-form note.
#[derive(Debug, Clone)]
pub struct Check {
    pub id: String,
    pub verdict: Verdict,
    pub witness: Vec<String>,
    pub note: Option<String>,
}

impl Check {
    pub fn new(id: impl Into<String>, verdict: Verdict) -> Self {
        Check {
            id: id.into(),
            verdict,
            witness: Vec::new(),
            note: None,
        }
    }

    pub fn with_witness(mut self, witness: Vec<String>) -> Self {
        self.witness = witness;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    List(Vec<Value>),
}

impl Value {
    pub fn labels(labels: &[String]) -> Value {
        Value::List(labels.iter().cloned().map(Value::Str).collect())
    }
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub key: String,
    pub value: Value,
}

#[derive(Debug, Clone, Default)]
pub struct Section {
    pub name: String,
    pub entries: Vec<Entry>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Section {
            name: name.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: Value) {
        self.entries.push(Entry {
            key: key.into(),
            value,
        });
    }

    pub fn push_str(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.push(key, Value::Str(value.into()));
    }

    pub fn push_check(&mut self, check: &Check) {
        self.push_str(check.id.clone(), check.verdict.as_str());
        if !check.witness.is_empty() {
            self.push(format!("{}.witness", check.id), Value::labels(&check.witness));
        }
        if let Some(note) = &check.note {
            self.push_str(format!("{}.note", check.id), note.clone());
        }
    }

    pub fn push_checks<'a, I: IntoIterator<Item = &'a Check>>(&mut self, checks: I) {
        for c in checks {
            self.push_check(c);
        }
    }
}

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone)]
pub struct Report {
    pub tool: String,
    pub command: String,
    pub digest: String,
    pub seed: u64,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: impl Into<String>, digest: impl Into<String>, seed: u64) -> Self {
        Report {
            tool: format!("ccspace {}", env!("CARGO_PKG_VERSION")),
            command: command.into(),
            digest: digest.into(),
            seed,
            sections: Vec::new(),
        }
    }

    /// True when any entry carries a failing or discrepancy verdict.
    pub fn has_failures(&self) -> bool {
        self.sections.iter().any(|s| {
            s.entries.iter().any(|e| {
                matches!(&e.value, Value::Str(v) if v == "fail" || v == "discrepancy")
            })
        })
    }

    pub fn emit_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ccspace report (schema {})", REPORT_SCHEMA_VERSION);
        let _ = writeln!(out, "tool = {}", self.tool);
        let _ = writeln!(out, "command = {}", self.command);
        let _ = writeln!(out, "scenario_digest = {}", self.digest);
        let _ = writeln!(out, "seed = {}", self.seed);
        for section in &self.sections {
            let _ = writeln!(out);
            let _ = writeln!(out, "[{}]", section.name);
            for e in &section.entries {
                let _ = writeln!(out, "{} = {}", e.key, render_text(&e.value));
            }
        }
        out
    }

    pub fn emit_structured(&self) -> String {
        let mut out = String::new();
        out.push('{');
        let _ = write!(out, "\"schema_version\":{}", REPORT_SCHEMA_VERSION);
        let _ = write!(out, ",\"tool\":{}", json_string(&self.tool));
        let _ = write!(out, ",\"command\":{}", json_string(&self.command));
        let _ = write!(out, ",\"scenario_digest\":{}", json_string(&self.digest));
        let _ = write!(out, ",\"seed\":{}", self.seed);
        out.push_str(",\"sections\":[");
        for (i, section) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{{\"name\":{},\"entries\":{{", json_string(&section.name));
            for (j, e) in section.entries.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{}:{}", json_string(&e.key), render_json(&e.value));
            }
            out.push_str("}}");
        }
        out.push_str("]}");
        out.push('\n');
        out
    }
}

pub fn format_float(x: f64) -> String {
    format!("{:.9}", x)
}

fn render_text(v: &Value) -> String {
    match v {
        Value::Bool(b) => b.to_string(),
        Value::Int(i) => i.to_string(),
        Value::Float(x) => format_float(*x),
        Value::Str(s) => s.clone(),
        Value::List(items) => {
            let parts: Vec<String> = items.iter().map(render_text).collect();
            format!("[{}]", parts.join(", "))
        }
    }
}

fn render_json(v: &Value) -> String {
    match v {
        Value::Bool(b) => b.to_string(),
        Value::Int(i) => i.to_string(),
        Value::Float(x) => format_float(*x),
        Value::Str(s) => json_string(s),
        Value::List(items) => {
            let parts: Vec<String> = items.iter().map(render_json).collect();
            format!("[{}]", parts.join(","))
        }
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                out.push_str(&format!("\\u{:04x}", c as u32));
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
