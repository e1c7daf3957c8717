//! Deterministic CSV tables with a `#`-prefixed provenance header.
//!
//! Floating-point cells use `{:.16e}` (17 significant digits, which round-trips
//! every `f64` exactly), integer cells are written as integers, and text cells
//! verbatim. Lines end in `\n`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::config::fmt_num;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            Cell::Text(_) => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Cell::Text(s) => Some(s),
            _ => None,
        }
    }

    fn render(&self) -> String {
        match self {
            Cell::Num(v) => fmt_num(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// A named table destined for one CSV file.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// File name, e.g. `solution.csv`.
    pub file_name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(file_name: impl Into<String>, columns: Vec<String>) -> Self {
        Self {
            file_name: file_name.into(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric values of a column, `None` if it is missing or not numeric.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        self.rows.iter().map(|r| r[i].as_f64()).collect()
    }

    /// Rows whose text column `key` equals `value`.
    pub fn filter<'a>(&'a self, key: &str, value: &'a str) -> impl Iterator<Item = &'a Vec<Cell>> + 'a {
        let i = self.column_index(key);
        self.rows
            .iter()
            .filter(move |r| i.is_some_and(|i| r[i].as_text() == Some(value)))
    }

    /// Full file content: provenance lines, header, rows.
    pub fn render(&self, provenance: &str) -> String {
        let mut out = String::new();
        for line in provenance.lines() {
            debug_assert!(line.starts_with('#'));
            out.push_str(line);
            out.push('\n');
        }
        let _ = writeln!(out, "# table = {}", self.file_name);
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CsvError {
    #[error("missing header row")]
    MissingHeader,
    #[error("line {line}: expected {expected} fields, found {found}")]
    Width { line: usize, expected: usize, found: usize },
}

/// Parsed CSV content.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCsv {
    pub comments: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl ParsedCsv {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        self.rows.iter().map(|r| r[i].as_f64()).collect()
    }
}

fn parse_cell(s: &str) -> Cell {
    if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
        if let Ok(v) = s.parse() {
            return Cell::Int(v);
        }
    }
    match s.parse::<f64>() {
        Ok(v) => Cell::Num(v),
        Err(_) => Cell::Text(s.to_string()),
    }
}

/// Parses text produced by [`Table::render`].
pub fn parse_csv(text: &str) -> Result<ParsedCsv, CsvError> {
    let mut comments = Vec::new();
    let mut columns: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        match &columns {
            None => columns = Some(fields.iter().map(|s| s.to_string()).collect()),
            Some(cols) => {
                if fields.len() != cols.len() {
                    return Err(CsvError::Width {
                        line: idx + 1,
                        expected: cols.len(),
                        found: fields.len(),
                    });
                }
                rows.push(fields.into_iter().map(parse_cell).collect());
            }
        }
    }
    Ok(ParsedCsv {
        comments,
        columns: columns.ok_or(CsvError::MissingHeader)?,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse_round_trip() {
        let mut t = Table::new("demo.csv", vec!["curve".into(), "m".into(), "value".into()]);
        let vals = [0.1 + 0.2, -1e-300, 123456789.123456789, 0.0, f64::MIN_POSITIVE];
        for (i, v) in vals.iter().enumerate() {
            t.push(vec!["spectral:3".into(), i.into(), (*v).into()]);
        }
        let text = t.render("# spectral-vms test\n# name = demo\n");
        assert!(text.ends_with('\n') && !text.contains('\r'));
        assert!(text.contains("3.0000000000000004e-1"));
        let parsed = parse_csv(&text).unwrap();
        assert_eq!(parsed.columns, t.columns);
        assert_eq!(parsed.rows, t.rows);
        assert_eq!(parsed.comments[0], "spectral-vms test");
        let back = parsed.column("value").unwrap();
        for (a, b) in back.iter().zip(vals) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn width_mismatch_is_reported() {
        let err = parse_csv("a,b\n1,2\n3\n").unwrap_err();
        assert_eq!(err, CsvError::Width { line: 3, expected: 2, found: 1 });
        assert_eq!(parse_csv("# only\n").unwrap_err(), CsvError::MissingHeader);
    }

    #[test]
    fn filter_by_text_column() {
        let mut t = Table::new("x.csv", vec!["curve".into(), "v".into()]);
        t.push(vec!["a".into(), 1.0.into()]);
        t.push(vec!["b".into(), 2.0.into()]);
        t.push(vec!["a".into(), 3.0.into()]);
        assert_eq!(t.filter("curve", "a").count(), 2);
        assert_eq!(t.column("v").unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(t.column("curve").is_none());
    }
}
