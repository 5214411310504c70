//! Machine- and human-readable analysis reports.
//!
//! Floating-point values are stored as decimal strings with twelve
//! significant digits so that the JSON form is byte-stable across
//! platforms.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::inequalities::WitnessReport;

pub const SCHEMA_VERSION: u32 = 1;

/// Formats `v` with twelve significant digits.
///
/// Magnitudes in `[1e-5, 1e12)` use positional notation, others use
/// `d.ddddddddddde±x`. Negative zero prints as zero.
pub fn format_number(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return "0.00000000000".into();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        return format!("{mantissa}e{exp}");
    }
    // The mantissa is already rounded to 12 digits; reposition its point.
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else {
        let p = point as usize;
        format!("{}.{}", &digits[..p], &digits[p..]).trim_end_matches('.').to_string()
    };
    let body = if body.contains('.') { body } else { format!("{body}.0") };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// One reported quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Number(String),
    Integer(i64),
    Bool(bool),
    Text(String),
    List(Vec<Value>),
}

impl Value {
    pub fn number(v: f64) -> Self {
        Value::Number(format_number(v))
    }

    pub fn numbers(vs: &[f64]) -> Self {
        Value::List(vs.iter().map(|&v| Value::number(v)).collect())
    }

    pub fn integers<I: IntoIterator<Item = i64>>(vs: I) -> Self {
        Value::List(vs.into_iter().map(Value::Integer).collect())
    }

    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }

    fn render(&self) -> String {
        match self {
            Value::Number(s) | Value::Text(s) => s.clone(),
            Value::Integer(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::List(items) => {
                let parts: Vec<String> = items.iter().map(Value::render).collect();
                format!("[{}]", parts.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Field {
    pub key: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub title: String,
    pub fields: Vec<Field>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            fields: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: Value) {
        self.fields.push(Field {
            key: key.to_string(),
            value,
        });
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|f| f.key == key).map(|f| &f.value)
    }

    pub fn from_witness(w: &WitnessReport) -> Self {
        let mut s = Section::new(w.name.clone())
            .with("value", Value::number(w.value))
            .with("classical_bound", Value::number(w.classical_bound));
        if let Some(q) = w.quantum_reference {
            s.push("quantum_reference", Value::number(q));
        }
        s.with("margin", Value::number(w.margin))
            .with("violated", Value::Bool(w.violated))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub stage: String,
    pub seconds: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Echo of the effective configuration as key/value pairs.
    pub config: Vec<Field>,
    pub sections: Vec<Section>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            tool: "ctxkit".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config: Vec::new(),
            sections: Vec::new(),
            timings: None,
        }
    }

    pub fn config(mut self, key: &str, value: Value) -> Self {
        self.config.push(Field {
            key: key.into(),
            value,
        });
        self
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    pub fn section(&self, title: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.title == title)
    }

    pub fn record_timing(&mut self, stage: &str, seconds: f64) {
        self.timings.get_or_insert_with(Vec::new).push(Timing {
            stage: stage.into(),
            seconds: format_number(seconds),
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.tool, self.version, self.command);
        for f in &self.config {
            let _ = writeln!(out, "  {} = {}", f.key, f.value.render());
        }
        for s in &self.sections {
            let _ = writeln!(out, "\n[{}]", s.title);
            let width = s.fields.iter().map(|f| f.key.len()).max().unwrap_or(0);
            for f in &s.fields {
                let _ = writeln!(out, "  {:<width$}  {}", f.key, f.value.render());
            }
        }
        if let Some(ts) = &self.timings {
            out.push_str("\n[timings]\n");
            let width = ts.iter().map(|t| t.stage.len()).max().unwrap_or(0);
            for t in ts {
                let _ = writeln!(out, "  {:<width$}  {:.6} s", t.stage, t.seconds);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_number(3.0 * (5f64.sqrt() - 1.0)), "3.70820393250");
        assert_eq!(format_number(18.0), "18.0000000000");
        assert_eq!(format_number(-1.0 / 3.0), "-0.333333333333");
        assert_eq!(format_number(1e-9), "1.00000000000e-9");
        assert_eq!(format_number(-0.0), "0.00000000000");
        assert_eq!(format_number(123456789012.0), "123456789012.0");
        assert_eq!(format_number(2.5e13), "2.50000000000e13");
        assert_eq!(format_number(0.000012345), "0.0000123450000000");
    }

    #[test]
    fn json_round_trip() {
        let mut doc = ReportDocument::new("graph").config("tol", Value::number(1e-8));
        doc.push(
            Section::new("icosa")
                .with("alpha", Value::Integer(3))
                .with("bases", Value::List(vec![Value::integers([0, 1, 2])]))
                .with("verdict", Value::text("ok")),
        );
        doc.record_timing("theta", 0.25);
        let back = ReportDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert!(doc.to_text().contains("alpha"));
    }

    #[test]
    fn timings_are_omitted_unless_recorded() {
        let doc = ReportDocument::new("x");
        assert!(!doc.to_json().contains("timings"));
    }
}
