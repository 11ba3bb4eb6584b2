//! Flat key/value records with fixed float formatting.
//!
//! Floats are written with 17 significant digits in scientific notation so
//! output round-trips and is byte-stable across runs.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Missing,
    Int(u64),
    Bool(bool),
    Str(String),
    Records(Vec<OutputRecord>),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<Option<f64>> for Value {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Value::Missing, Value::Float)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as u64)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Str(x.to_owned())
    }
}

impl From<Vec<OutputRecord>> for Value {
    fn from(x: Vec<OutputRecord>) -> Self {
        Value::Records(x)
    }
}

/// Float with 17 significant digits; empty for non-finite values.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

/// CSV cell for an optional float.
pub fn format_opt(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

/// An ordered key/value map.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputRecord {
    fields: Vec<(String, Value)>,
}

impl OutputRecord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.to_owned(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        self.write_json(&mut out, 0);
        out.push('\n');
        out
    }

    fn write_json(&self, out: &mut String, indent: usize) {
        let pad = "  ".repeat(indent + 1);
        out.push('{');
        for (i, (key, value)) in self.fields.iter().enumerate() {
            out.push_str(if i == 0 { "\n" } else { ",\n" });
            let _ = write!(out, "{pad}{}: ", quote(key));
            match value {
                Value::Float(x) if x.is_finite() => out.push_str(&format_float(*x)),
                Value::Float(_) | Value::Missing => out.push_str("null"),
                Value::Int(n) => {
                    let _ = write!(out, "{n}");
                }
                Value::Bool(b) => {
                    let _ = write!(out, "{b}");
                }
                Value::Str(s) => out.push_str(&quote(s)),
                Value::Records(records) => {
                    out.push('[');
                    for (j, r) in records.iter().enumerate() {
                        out.push_str(if j == 0 { "\n" } else { ",\n" });
                        out.push_str(&"  ".repeat(indent + 2));
                        r.write_json(out, indent + 2);
                    }
                    if !records.is_empty() {
                        out.push('\n');
                        out.push_str(&pad);
                    }
                    out.push(']');
                }
            }
        }
        if !self.fields.is_empty() {
            out.push('\n');
            out.push_str(&"  ".repeat(indent));
        }
        out.push('}');
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}
