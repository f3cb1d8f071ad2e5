//! Result records and their JSON / CSV encodings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::OutputFormat;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OutputValue {
    Scalar(f64),
    Vector(Vec<f64>),
    Matrix(Vec<Vec<f64>>),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedOutput {
    pub name: String,
    pub value: OutputValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ToleranceMode {
    /// `abs_error / scale ≤ tolerance`
    Relative,
    /// `abs_error ≤ tolerance`
    Absolute,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub name: String,
    pub computed: f64,
    pub reference: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    /// Magnitude the relative error is taken against.
    pub scale: f64,
    pub tolerance: f64,
    pub mode: ToleranceMode,
    pub pass: bool,
}

impl Comparison {
    pub fn relative(name: impl Into<String>, computed: f64, reference: f64, scale: f64, tolerance: f64) -> Self {
        let abs_error = (computed - reference).abs();
        let rel_error = if scale > 0.0 { abs_error / scale } else { abs_error };
        Self {
            name: name.into(),
            computed,
            reference,
            abs_error,
            rel_error,
            scale,
            tolerance,
            mode: ToleranceMode::Relative,
            pass: rel_error <= tolerance,
        }
    }

    pub fn absolute(name: impl Into<String>, computed: f64, reference: f64, tolerance: f64) -> Self {
        let abs_error = (computed - reference).abs();
        let scale = reference.abs();
        Self {
            name: name.into(),
            computed,
            reference,
            abs_error,
            rel_error: if scale > 0.0 { abs_error / scale } else { abs_error },
            scale,
            tolerance,
            mode: ToleranceMode::Absolute,
            pass: abs_error <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub command: String,
    pub schema_version: u32,
    /// SHA-256 of the raw config bytes.
    pub input_digest: String,
    pub outputs: Vec<NamedOutput>,
    pub comparisons: Vec<Comparison>,
    pub pass: bool,
    pub duration_seconds: f64,
}

impl ResultRecord {
    pub fn new(command: &str, input_digest: String) -> Self {
        Self {
            command: command.to_string(),
            schema_version: crate::config::SCHEMA_VERSION,
            input_digest,
            outputs: Vec::new(),
            comparisons: Vec::new(),
            pass: true,
            duration_seconds: 0.0,
        }
    }

    pub fn output(&mut self, name: impl Into<String>, value: OutputValue) {
        self.outputs.push(NamedOutput { name: name.into(), value });
    }

    pub fn compare(&mut self, c: Comparison) {
        self.pass &= c.pass;
        self.comparisons.push(c);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("record serializes");
                s.push('\n');
                s
            }
            OutputFormat::Csv => self.to_csv(),
        }
    }

    /// One row per output component and per comparison. Numbers use 17
    /// significant digits; the duration is omitted so files are stable.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("command,kind,name,component,computed,reference,abs_error,rel_error,tolerance,pass\n");
        let num = |x: f64| format!("{x:.16e}");
        for o in &self.outputs {
            let mut row = |component: String, value: String| {
                let _ = writeln!(out, "{},output,{},{},{},,,,,", self.command, field(&o.name), component, value);
            };
            match &o.value {
                OutputValue::Scalar(x) => row(String::new(), num(*x)),
                OutputValue::Vector(v) => v.iter().enumerate().for_each(|(i, x)| row(i.to_string(), num(*x))),
                OutputValue::Matrix(m) => m.iter().enumerate().for_each(|(i, r)| {
                    r.iter().enumerate().for_each(|(j, x)| row(format!("{i}{j}"), num(*x)))
                }),
                OutputValue::Text(t) => row(String::new(), field(t)),
            }
        }
        for c in &self.comparisons {
            let _ = writeln!(
                out,
                "{},comparison,{},,{},{},{},{},{},{}",
                self.command,
                field(&c.name),
                num(c.computed),
                num(c.reference),
                num(c.abs_error),
                num(c.rel_error),
                num(c.tolerance),
                c.pass
            );
        }
        out
    }
}

/// Quotes a CSV field when it contains a separator, quote or line break.
fn field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
