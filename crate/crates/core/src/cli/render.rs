//! Table, CSV and JSON rendering of command output.

use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) => format_number(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Num(x) => Value::from(*x),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Bool(b) => Value::from(*b),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

/// Twelve significant digits; scientific notation outside `[1e-3, 1e6)`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // The exponent is taken after rounding so 0.99999999999999 becomes 1.00000000000.
    let sci = format!("{x:.11e}");
    let exponent: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("exponent digits");
    if (-3..6).contains(&exponent) {
        let decimals = (11 - exponent) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub meta: Vec<(String, Value)>,
    pub header: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
}

impl Report {
    pub fn new(columns: &[&str]) -> Self {
        Report {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.meta.push((key.to_string(), value.into()));
        self
    }

    pub fn header(&mut self, key: &str, value: impl Into<Cell>) -> &mut Self {
        self.header.push((key.to_string(), value.into()));
        self
    }

    pub fn summary(&mut self, key: &str, value: impl Into<Cell>) -> &mut Self {
        self.summary.push((key.to_string(), value.into()));
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Table => Ok(self.render_table()),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.header {
            out.push_str(&format!("{k}: {}\n", v.text()));
        }
        if !self.header.is_empty() {
            out.push('\n');
        }
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
            .collect();
        let line = |fields: Vec<&str>| {
            fields
                .iter()
                .zip(&widths)
                .map(|(f, w)| format!("{f:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
                + "\n"
        };
        out.push_str(&line(self.columns.iter().map(String::as_str).collect()));
        for r in &cells {
            out.push_str(&line(r.iter().map(String::as_str).collect()));
        }
        if !self.summary.is_empty() {
            out.push('\n');
        }
        for (k, v) in &self.summary {
            out.push_str(&format!("{k}: {}\n", v.text()));
        }
        out
    }

    fn render_csv(&self) -> Result<String> {
        let mut out = String::new();
        for (k, v) in &self.header {
            out.push_str(&format!("# {k}={}\n", v.text()));
        }
        let mut writer = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Domain(format!("csv output: {e}"));
        writer.write_record(&self.columns).map_err(io)?;
        for r in &self.rows {
            writer.write_record(r.iter().map(Cell::text)).map_err(io)?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::Domain(format!("csv output: {e}")))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        for (k, v) in &self.summary {
            out.push_str(&format!("# {k}={}\n", v.text()));
        }
        Ok(out)
    }

    fn render_json(&self) -> Result<String> {
        let mut doc = Map::new();
        doc.insert(
            "meta".into(),
            Value::Object(self.meta.iter().map(|(k, v)| (k.clone(), v.clone())).collect()),
        );
        if !self.header.is_empty() {
            doc.insert("header".into(), pairs_to_object(&self.header));
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| (c.clone(), v.json()))
                        .collect(),
                )
            })
            .collect();
        doc.insert("rows".into(), Value::Array(rows));
        if !self.summary.is_empty() {
            doc.insert("summary".into(), pairs_to_object(&self.summary));
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(doc))
            .map_err(|e| Error::Domain(format!("json output: {e}")))?;
        text.push('\n');
        Ok(text)
    }
}

fn pairs_to_object(pairs: &[(String, Cell)]) -> Value {
    Value::Object(pairs.iter().map(|(k, v)| (k.clone(), v.json())).collect())
}
