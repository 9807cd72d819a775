//! Command reports in human-readable or `key=value` form.

use std::fmt::Write as _;

/// Significant digits for every printed float.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `x` with exactly 12 significant digits: fixed notation for
/// magnitudes in `[1e-4, 1e12)`, scientific otherwise.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let digits = SIGNIFICANT_DIGITS as i32;
    if x == 0.0 {
        return format!("{:.*}", (digits - 1) as usize, 0.0);
    }
    let exponent = x.abs().log10().floor() as i32;
    if !(-4..12).contains(&exponent) {
        return format!("{:.*e}", (digits - 1) as usize, x);
    }
    let decimals = (digits - 1 - exponent).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding may carry into a new leading digit (9.99… -> 10.0…)
    let rounded: f64 = s.parse().expect("formatted float parses");
    if rounded.abs() >= 10f64.powi(exponent + 1) && decimals > 0 {
        format!("{x:.prec$}", prec = decimals - 1)
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Int(usize),
    Bool(bool),
    Text(String),
    Floats(Vec<f64>),
}

impl Value {
    fn render(&self, list_separator: &str) -> String {
        match self {
            Value::Float(x) => format_float(*x),
            Value::Int(k) => k.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
            Value::Floats(xs) => xs
                .iter()
                .map(|x| format_float(*x))
                .collect::<Vec<_>>()
                .join(list_separator),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<usize> for Value {
    fn from(k: usize) -> Self {
        Value::Int(k)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<Vec<f64>> for Value {
    fn from(xs: Vec<f64>) -> Self {
        Value::Floats(xs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Kv,
}

/// Ordered record of one command's inputs and results.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    command: String,
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.entries.push((key.into(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn entries(&self) -> &[(String, Value)] {
        &self.entries
    }

    /// `key=value` lines; lists are comma-separated.
    pub fn to_kv(&self) -> String {
        let mut out = format!("command={}\n", self.command);
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k}={}", v.render(","));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let width = self.entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = format!("{}\n", self.command);
        for (k, v) in &self.entries {
            let _ = writeln!(out, "  {k:<width$}  {}", v.render(" "));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Kv => self.to_kv(),
        }
    }
}
