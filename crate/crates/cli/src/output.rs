use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// What a command produced: the JSON document plus a flat table view.
pub struct Report {
    json: Value,
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
    /// Extra CSV written to `--plot`.
    pub plot: Option<String>,
}

impl Report {
    pub fn new<T: Serialize>(value: &T) -> Self {
        Report {
            json: serde_json::to_value(value).expect("report values serialize"),
            headers: Vec::new(),
            rows: Vec::new(),
            plot: None,
        }
    }

    pub fn columns(mut self, headers: &[&str]) -> Self {
        self.headers = headers.iter().map(|h| h.to_string()).collect();
        self
    }

    pub fn row(mut self, cells: Vec<String>) -> Self {
        self.rows.push(cells);
        self
    }

    pub fn push(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    /// Key/value rows.
    pub fn field(self, key: &str, value: impl ToString) -> Self {
        if self.headers.is_empty() {
            return self.columns(&["field", "value"]).row(vec![key.into(), value.to_string()]);
        }
        self.row(vec![key.into(), value.to_string()])
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::new();
                let _ = writeln!(s, "{}", self.headers.iter().map(|h| csv_cell(h)).collect::<Vec<_>>().join(","));
                for r in &self.rows {
                    let _ = writeln!(s, "{}", r.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","));
                }
                s
            }
            Format::Table => {
                let n = self.headers.len();
                let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
                for r in &self.rows {
                    for (i, c) in r.iter().enumerate().take(n) {
                        widths[i] = widths[i].max(c.chars().count());
                    }
                }
                let mut s = String::new();
                let line = |s: &mut String, cells: &[String]| {
                    let parts: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect();
                    let _ = writeln!(s, "{}", parts.join("  ").trim_end());
                };
                line(&mut s, &self.headers);
                line(&mut s, &widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>());
                for r in &self.rows {
                    line(&mut s, r);
                }
                s
            }
        }
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

/// Shortest representation that parses back to the same `f64`.
pub fn float(x: f64) -> String {
    format!("{x}")
}

pub fn opt_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}
