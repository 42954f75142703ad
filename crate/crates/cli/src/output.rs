//! Serialized result records and their CSV / JSON renderings.

use std::io::Write;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

pub const SCHEMA_VERSION: &str = "1";

/// Significant digits kept for every floating-point output value.
pub const SIGNIFICANT_DIGITS: usize = 12;

pub type Row = IndexMap<String, Value>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub inputs: IndexMap<String, Value>,
    pub rows: Vec<Row>,
    /// RFC 3339 timestamp.
    pub generated_at: String,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: IndexMap<String, Value>, rows: Vec<Row>) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs,
            rows,
            generated_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

/// Rounds to [`SIGNIFICANT_DIGITS`] digits; non-finite values become `null`.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

/// Builds a row from `(column, value)` pairs.
pub fn row<I, K>(cells: I) -> Row
where
    I: IntoIterator<Item = (K, Value)>,
    K: Into<String>,
{
    cells.into_iter().map(|(k, v)| (k.into(), v)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match (n.as_u64(), n.as_i64(), n.as_f64()) {
            (Some(u), _, _) => u.to_string(),
            (None, Some(i), _) => i.to_string(),
            (_, _, Some(f)) => {
                let a = f.abs();
                if f == 0.0 || (1e-4..1e15).contains(&a) {
                    format!("{f}")
                } else {
                    format!("{f:e}")
                }
            }
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Writes the rows as CSV; the header is the union of row keys in
/// first-seen order.
pub fn write_csv<W: Write>(record: &OutputRecord, out: W) -> csv::Result<()> {
    let mut header: Vec<&str> = Vec::new();
    for r in &record.rows {
        for k in r.keys() {
            if !header.contains(&k.as_str()) {
                header.push(k);
            }
        }
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&header)?;
    for r in &record.rows {
        w.write_record(header.iter().map(|k| r.get(*k).map(csv_cell).unwrap_or_default()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(record: &OutputRecord, mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, record)?;
    writeln!(out)
}

pub fn write_record<W: Write>(record: &OutputRecord, format: Format, out: W) -> std::io::Result<()> {
    match format {
        Format::Csv => write_csv(record, out).map_err(std::io::Error::other),
        Format::Json => write_json(record, out),
    }
}
