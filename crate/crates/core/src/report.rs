//! Reports: one JSON document per command, optionally a flat CSV.
//!
//! Rationals appear as `{"exact": "3/2", "decimal": "1.5"}` in JSON and as
//! a pair of columns `x` / `x_decimal` in CSV. Wall-clock data lives only in
//! the top-level `timing` object so reports diff cleanly.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::rat::Rat;

pub const DECIMAL_DIGITS: usize = 12;

/// One statistic or parameter value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Int(i64),
    Bool(bool),
    Text(String),
    Rat(Rat),
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => serializer.serialize_i64(*v),
            Cell::Bool(v) => serializer.serialize_bool(*v),
            Cell::Text(v) => serializer.serialize_str(v),
            Cell::Rat(r) => {
                let mut m = serializer.serialize_map(Some(2))?;
                m.serialize_entry("exact", &r.to_string())?;
                m.serialize_entry("decimal", &r.to_decimal_string(DECIMAL_DIGITS))?;
                m.end()
            }
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<Rat> for Cell {
    fn from(v: Rat) -> Self {
        Cell::Rat(v)
    }
}

/// Ordered named cells; column order is insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Row(pub Vec<(String, Cell)>);

impl Row {
    pub fn new() -> Self {
        Row(Vec::new())
    }

    pub fn with(mut self, key: &str, value: impl Into<Cell>) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Cell>) {
        self.0.push((key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Cell> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

impl Serialize for Row {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub parameters: Row,
    pub pass: bool,
    /// Command-specific verdict details and witnesses.
    pub results: Value,
    /// Per-instance summary rows (corpus runs); a single row otherwise.
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            parameters: Row::new(),
            pass: true,
            results: Value::Null,
            rows: Vec::new(),
            seed: None,
            timing: Timing::default(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The JSON document without the `timing` section.
    pub fn to_json_untimed(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(o) = v.as_object_mut() {
            o.remove("timing");
        }
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    /// Flat CSV with one row per entry of `rows`, rationals duplicated as
    /// decimal columns.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        if let Some(first) = self.rows.first() {
            let mut header = Vec::new();
            for (k, v) in &first.0 {
                header.push(k.clone());
                if matches!(v, Cell::Rat(_)) {
                    header.push(format!("{k}_decimal"));
                }
            }
            w.write_record(&header)?;
            for row in &self.rows {
                let mut rec = Vec::new();
                for (k, _) in &first.0 {
                    match row.get(k) {
                        Some(Cell::Rat(r)) => {
                            rec.push(r.to_string());
                            rec.push(r.to_decimal_string(DECIMAL_DIGITS));
                        }
                        Some(Cell::Int(v)) => rec.push(v.to_string()),
                        Some(Cell::Bool(v)) => rec.push(v.to_string()),
                        Some(Cell::Text(v)) => rec.push(v.clone()),
                        None => rec.push(String::new()),
                    }
                }
                w.write_record(&rec)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Writes the report to `path`, or stdout when `path` is `None` or `-`.
pub fn emit_report(report: &Report, format: Format, path: Option<&Path>) -> io::Result<()> {
    let text = match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv().map_err(io::Error::other)?,
    };
    match path {
        Some(p) if p.as_os_str() != "-" => fs::write(p, text),
        _ => io::stdout().write_all(text.as_bytes()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("pierce");
        r.rows.push(
            Row::new()
                .with("tau", 2usize)
                .with("tau_star", Rat::new(3, 2))
                .with("ok", true),
        );
        r.rows.push(
            Row::new()
                .with("tau", 1usize)
                .with("tau_star", Rat::one())
                .with("ok", true),
        );
        r.timing.elapsed_ms = 12.5;
        r
    }

    #[test]
    fn rational_json_and_csv() {
        let r = sample();
        let json = r.to_json();
        assert!(json.contains("\"exact\": \"3/2\"") && json.contains("\"decimal\": \"1.5\""));
        let csv = r.to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "tau,tau_star,tau_star_decimal,ok");
        assert_eq!(lines[1], "2,3/2,1.5,true");
        assert_eq!(lines.len(), 1 + r.rows.len());
    }

    #[test]
    fn timing_isolated() {
        let mut a = sample();
        let b = sample();
        a.timing.elapsed_ms = 99.0;
        assert_ne!(a.to_json(), b.to_json());
        assert_eq!(a.to_json_untimed(), b.to_json_untimed());
        let parsed: Value = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(parsed["rows"].as_array().unwrap().len(), 2);
    }
}
