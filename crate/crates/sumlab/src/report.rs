//! Row-oriented reports and their three output formats.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Bool(bool),
    Int(u64),
    Text(String),
    /// Blank in CSV, `null` in JSON, "none" in text.
    Null,
}

impl Cell {
    pub fn opt(v: Option<u64>) -> Cell {
        v.map_or(Cell::Null, Cell::Int)
    }

    fn csv_field(&self) -> String {
        match self {
            Cell::Bool(b) => b.to_string(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Null => String::new(),
        }
    }

    fn parse_csv(field: &str) -> Cell {
        if field.is_empty() {
            Cell::Null
        } else if let Ok(b) = field.parse() {
            Cell::Bool(b)
        } else if let Ok(v) = field.parse() {
            Cell::Int(v)
        } else {
            Cell::Text(field.to_string())
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Bool(b) => write!(f, "{b}"),
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Text(s) => f.write_str(s),
            Cell::Null => f.write_str("none"),
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Cell {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Cell {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Cell {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Cell {
        Cell::Text(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Free-form lines written as `#` comments ahead of CSV output.
    pub provenance: Vec<String>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Table {
        Table { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new(), provenance: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Parses the CSV layout written by [`emit`], comments included.
    pub fn from_csv(name: &str, text: &str) -> Result<Table> {
        let bad = |msg: String| Error::Fixture(name.to_string(), msg);
        let mut provenance = Vec::new();
        let mut body = String::new();
        for line in text.lines() {
            match line.strip_prefix('#') {
                Some(rest) => provenance.push(rest.strip_prefix(' ').unwrap_or(rest).to_string()),
                None => {
                    body.push_str(line);
                    body.push('\n');
                }
            }
        }
        let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(body.as_bytes());
        let columns: Vec<String> = rd.headers().map_err(|e| bad(e.to_string()))?.iter().map(String::from).collect();
        let mut rows = Vec::new();
        for rec in rd.records() {
            let rec = rec.map_err(|e| bad(e.to_string()))?;
            rows.push(rec.iter().map(Cell::parse_csv).collect());
        }
        Ok(Table { columns, rows, provenance })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" | "txt" => Ok(Format::Text),
            _ => Err(Error::Parse { what: "output format", token: s.to_string() }),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

pub fn emit(format: Format, table: &Table, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => emit_json(table, out),
        Format::Csv => emit_csv(table, out),
        Format::Text => emit_text(table, out),
    }
}

pub fn to_string(format: Format, table: &Table) -> String {
    let mut buf = Vec::new();
    emit(format, table, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("reports are UTF-8")
}

/// One JSON object per row, keys in column order.
pub fn json_line(columns: &[String], row: &[Cell]) -> String {
    let mut s = String::from("{");
    for (i, (k, v)) in columns.iter().zip(row).enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&serde_json::to_string(k).expect("string"));
        s.push(':');
        s.push_str(&serde_json::to_string(v).expect("cell"));
    }
    s.push('}');
    s
}

fn emit_json(table: &Table, out: &mut dyn Write) -> io::Result<()> {
    for row in &table.rows {
        writeln!(out, "{}", json_line(&table.columns, row))?;
    }
    Ok(())
}

fn emit_csv(table: &Table, out: &mut dyn Write) -> io::Result<()> {
    for line in &table.provenance {
        writeln!(out, "# {line}")?;
    }
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::csv_field))?;
    }
    w.flush()
}

fn emit_text(table: &Table, out: &mut dyn Write) -> io::Result<()> {
    let cells: Vec<Vec<String>> = table.rows.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
    let widths: Vec<usize> = (0..table.columns.len())
        .map(|j| cells.iter().map(|r| r[j].len()).chain([table.columns[j].len()]).max().unwrap_or(0))
        .collect();
    let line = |items: &[String]| {
        let parts: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        parts.join(" | ")
    };
    writeln!(out, "{}", line(&table.columns))?;
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    writeln!(out, "{}", rule.join("-+-"))?;
    for r in &cells {
        writeln!(out, "{}", line(r))?;
    }
    Ok(())
}

/// First cell where two tables disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// 1-based data row, or 0 for the header.
    pub row: usize,
    pub column: String,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.row == 0 {
            write!(f, "header column {}: expected `{}`, got `{}`", self.column, self.expected, self.actual)
        } else {
            write!(f, "row {} column {}: expected {}, got {}", self.row, self.column, self.expected, self.actual)
        }
    }
}

pub fn first_mismatch(expected: &Table, actual: &Table) -> Option<Mismatch> {
    let width = expected.columns.len().max(actual.columns.len());
    let get = |v: &[String], j: usize| v.get(j).cloned().unwrap_or_else(|| "<missing>".into());
    for j in 0..width {
        if expected.columns.get(j) != actual.columns.get(j) {
            return Some(Mismatch { row: 0, column: get(&expected.columns, j), expected: get(&expected.columns, j), actual: get(&actual.columns, j) });
        }
    }
    let rows = expected.rows.len().max(actual.rows.len());
    for i in 0..rows {
        let (e, a) = (expected.rows.get(i), actual.rows.get(i));
        for (j, col) in expected.columns.iter().enumerate() {
            let show = |r: Option<&Vec<Cell>>| r.map_or("<missing row>".to_string(), |r| r[j].to_string());
            if e.map(|r| &r[j]) != a.map(|r| &r[j]) {
                return Some(Mismatch { row: i + 1, column: col.clone(), expected: show(e), actual: show(a) });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_with_blanks_and_quotes() {
        let mut t = Table::new(["a", "b"]);
        t.provenance.push("hello".into());
        t.push(vec![Cell::Int(3), Cell::Null]);
        t.push(vec![Cell::Text("x,y".into()), Cell::Int(0)]);
        let s = to_string(Format::Csv, &t);
        assert_eq!(s, "# hello\na,b\n3,\n\"x,y\",0\n");
        assert_eq!(Table::from_csv("t", &s).unwrap(), t);
    }

    #[test]
    fn empty_csv_keeps_header() {
        let t = Table::new(["n", "value"]);
        assert_eq!(to_string(Format::Csv, &t), "n,value\n");
        assert_eq!(to_string(Format::Json, &t), "");
    }

    #[test]
    fn json_keys_follow_column_order() {
        let mut t = Table::new(["n", "m", "h", "bound", "value"]);
        t.push(vec![20.into(), 5.into(), 2.into(), 15.into(), 14.into()]);
        assert_eq!(to_string(Format::Json, &t), "{\"n\":20,\"m\":5,\"h\":2,\"bound\":15,\"value\":14}\n");
    }

    #[test]
    fn mismatch_points_at_first_cell() {
        let mut a = Table::new(["n", "v"]);
        a.push(vec![1.into(), 1.into()]);
        a.push(vec![2.into(), 5.into()]);
        let mut b = a.clone();
        b.rows[1][1] = Cell::Int(6);
        let m = first_mismatch(&a, &b).unwrap();
        assert_eq!((m.row, m.column.as_str()), (2, "v"));
        assert_eq!(m.to_string(), "row 2 column v: expected 5, got 6");
        b.rows.pop();
        assert_eq!(first_mismatch(&a, &b).unwrap().actual, "<missing row>");
        assert!(first_mismatch(&a, &a).is_none());
    }
}
