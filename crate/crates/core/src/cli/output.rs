use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::{OutputConfig, OutputFormat};
use crate::error::{Error, Result};

/// One cell of a [`Table`].
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(usize),
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Numeric column by name; non-numeric cells are skipped.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| *h == name)?;
        Some(
            self.rows
                .iter()
                .filter_map(|r| match r[i] {
                    Cell::Num(v) => Some(v),
                    Cell::Int(v) => Some(v as f64),
                    _ => None,
                })
                .collect(),
        )
    }
}

/// `precision` significant digits in scientific notation.
pub fn format_number(v: f64, precision: usize) -> String {
    format!("{:.*e}", precision.saturating_sub(1), v)
}

fn rounded(v: f64, precision: usize) -> f64 {
    format_number(v, precision).parse().unwrap_or(v)
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Config(format!("cannot write {}: {e}", path.display()))
}

pub fn render_csv(table: &Table, precision: usize) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let to_err = |e: csv::Error| Error::Config(e.to_string());
    w.write_record(&table.header).map_err(to_err)?;
    for row in &table.rows {
        let fields: Vec<String> = row
            .iter()
            .map(|c| match c {
                Cell::Int(v) => v.to_string(),
                Cell::Num(v) => format_number(*v, precision),
                Cell::Text(s) => s.clone(),
                Cell::Empty => String::new(),
            })
            .collect();
        w.write_record(&fields).map_err(to_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render_json_table(table: &Table, precision: usize) -> String {
    let rows: Vec<serde_json::Value> = table
        .rows
        .iter()
        .map(|row| {
            let obj = table
                .header
                .iter()
                .zip(row)
                .map(|(h, c)| {
                    let v = match c {
                        Cell::Int(v) => serde_json::Value::from(*v),
                        Cell::Num(v) => serde_json::Value::from(rounded(*v, precision)),
                        Cell::Text(s) => serde_json::Value::from(s.clone()),
                        Cell::Empty => serde_json::Value::Null,
                    };
                    (h.to_string(), v)
                })
                .collect::<serde_json::Map<_, _>>();
            serde_json::Value::Object(obj)
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&rows).expect("table serializes");
    text.push('\n');
    text
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))
}

/// Writes `<stem>.csv` or `<stem>.json` under the output directory.
pub fn write_table(output: &OutputConfig, stem: &str, table: &Table) -> Result<PathBuf> {
    ensure_dir(&output.directory)?;
    let (ext, text) = match output.format {
        OutputFormat::Csv => ("csv", render_csv(table, output.precision)?),
        OutputFormat::Json => ("json", render_json_table(table, output.precision)),
    };
    let path = output.directory.join(format!("{stem}.{ext}"));
    fs::write(&path, text).map_err(|e| io_error(&path, e))?;
    Ok(path)
}

pub fn write_json<T: Serialize>(output: &OutputConfig, stem: &str, value: &T) -> Result<PathBuf> {
    ensure_dir(&output.directory)?;
    let path = output.directory.join(format!("{stem}.json"));
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Config(e.to_string()))?;
    text.push('\n');
    fs::write(&path, text).map_err(|e| io_error(&path, e))?;
    Ok(path)
}
