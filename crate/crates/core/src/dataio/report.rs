use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// A report cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Str(String),
    Int(i64),
    Float(f64),
    Bool(bool),
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Str(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Str(s)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v as i64)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

/// Floats carry 17 significant digits so they parse back to the same bits.
fn float_text(v: f64) -> Option<String> {
    v.is_finite().then(|| format!("{v:.16e}"))
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Str(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Value::Str(s) => s.clone(),
            Value::Int(v) => v.to_string(),
            Value::Float(v) => float_text(*v).unwrap_or_else(|| v.to_string()),
            Value::Bool(v) => v.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Value::Str(s) => serde_json::to_string(s).expect("string serializes"),
            Value::Int(v) => v.to_string(),
            Value::Float(v) => float_text(*v).unwrap_or_else(|| "null".into()),
            Value::Bool(v) => v.to_string(),
        }
    }
}

/// A table with metadata, serialized with a fixed field order.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub kind: String,
    pub meta: Vec<(String, Value)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Report {
    pub fn new(kind: &str, columns: &[&str]) -> Self {
        Report {
            kind: kind.to_string(),
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.meta.push((key.to_string(), value.into()));
        self
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Header line, then one line per row. Metadata is not included.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Value::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let key = |k: &str| serde_json::to_string(k).expect("string serializes");
        let mut out = String::from("{\n");
        writeln!(out, "  \"kind\": {},", key(&self.kind)).expect("write to string");
        out.push_str("  \"meta\": {");
        for (i, (k, v)) in self.meta.iter().enumerate() {
            let sep = if i == 0 { "\n" } else { ",\n" };
            write!(out, "{sep}    {}: {}", key(k), v.json()).expect("write to string");
        }
        out.push_str(if self.meta.is_empty() { "},\n" } else { "\n  },\n" });
        let cols: Vec<String> = self.columns.iter().map(|c| key(c)).collect();
        writeln!(out, "  \"columns\": [{}],", cols.join(", ")).expect("write to string");
        out.push_str("  \"rows\": [");
        for (i, row) in self.rows.iter().enumerate() {
            let sep = if i == 0 { "\n" } else { ",\n" };
            let cells: Vec<String> = self
                .columns
                .iter()
                .zip(row)
                .map(|(c, v)| format!("{}: {}", key(c), v.json()))
                .collect();
            write!(out, "{sep}    {{{}}}", cells.join(", ")).expect("write to string");
        }
        out.push_str(if self.rows.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl ReportFormat {
    /// JSON for a `.json` extension, CSV otherwise.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => ReportFormat::Json,
            _ => ReportFormat::Csv,
        }
    }
}

pub fn write_report(report: &Report, path: &Path, format: ReportFormat) -> Result<()> {
    let text = match format {
        ReportFormat::Csv => report.to_csv(),
        ReportFormat::Json => report.to_json(),
    };
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
