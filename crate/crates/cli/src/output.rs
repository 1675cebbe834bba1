//! Tabular output shared by every subcommand: CSV with a fixed header, or a
//! JSON document whose rows mirror the CSV columns field for field.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // Shortest round-trip form, always with a decimal point or exponent.
            Cell::Float(v) => format!("{v:?}"),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
    pub meta: Map<String, Value>,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            meta: Map::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.meta.insert(key.to_string(), value.into());
        self
    }

    pub fn write_to(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::csv))?;
                }
                w.flush()
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(k, c)| (k.to_string(), c.json()))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let doc = json!({
                    "columns": self.columns,
                    "rows": rows,
                    "meta": self.meta,
                });
                serde_json::to_writer_pretty(&mut *out, &doc)?;
                writeln!(out)
            }
        }
    }

    /// Writes to `path`, or to stdout when no path is given.
    pub fn emit(&self, format: Format, path: Option<&Path>) -> io::Result<()> {
        match path {
            Some(p) => {
                let mut f = io::BufWriter::new(File::create(p)?);
                self.write_to(format, &mut f)?;
                f.flush()
            }
            None => {
                let stdout = io::stdout();
                let mut lock = stdout.lock();
                self.write_to(format, &mut lock)
            }
        }
    }
}
