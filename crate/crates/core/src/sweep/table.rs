//! Sweep results and their CSV form.
//!
//! Layout: metadata as `# key = value` lines, failed points as
//! `# failed <axis>=<value> <CODE>: <message>` lines, then the header and
//! the data rows. Numbers are written with 17 significant digits so they
//! read back bit-for-bit.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// A grid point that could not be evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct FailedPoint {
    pub axis_value: f64,
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Ordered `(key, value)` pairs describing how the table was produced.
    pub metadata: Vec<(String, String)>,
    pub failed: Vec<FailedPoint>,
}

/// 17 significant digits in scientific notation.
pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

impl SweepTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// The CSV text.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k} = {v}");
        }
        let axis = self.columns.first().map_or("axis", String::as_str);
        for f in &self.failed {
            let _ = writeln!(
                out,
                "# failed {axis}={} {}: {}",
                format_number(f.axis_value),
                f.code,
                f.message
            );
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_number(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Only the header and data rows, without metadata.
    pub fn data_csv(&self) -> String {
        SweepTable {
            metadata: Vec::new(),
            failed: Vec::new(),
            ..self.clone()
        }
        .to_csv()
    }

    /// Parses text produced by [`SweepTable::to_csv`].
    pub fn from_csv(text: &str) -> Result<SweepTable> {
        let mut table = SweepTable::default();
        let mut header_seen = false;
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            if let Some(comment) = line.strip_prefix('#') {
                let comment = comment.trim();
                if let Some(rest) = comment.strip_prefix("failed ") {
                    table.failed.push(parse_failed(rest, lineno)?);
                } else if let Some((k, v)) = comment.split_once(" = ") {
                    table.metadata.push((k.to_string(), v.to_string()));
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            if !header_seen {
                table.columns = line.split(',').map(str::to_string).collect();
                header_seen = true;
                continue;
            }
            let row = line
                .split(',')
                .map(|c| {
                    c.parse::<f64>().map_err(|_| Error::Parse {
                        line: lineno,
                        message: format!("bad number `{c}`"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != table.columns.len() {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("{} fields, header has {}", row.len(), table.columns.len()),
                });
            }
            table.rows.push(row);
        }
        Ok(table)
    }
}

fn parse_failed(rest: &str, line: usize) -> Result<FailedPoint> {
    let bad = || Error::Parse {
        line,
        message: format!("malformed failed-point line `{rest}`"),
    };
    let (point, tail) = rest.split_once(' ').ok_or_else(bad)?;
    let (_, value) = point.split_once('=').ok_or_else(bad)?;
    let (code, message) = tail.split_once(": ").ok_or_else(bad)?;
    Ok(FailedPoint {
        axis_value: value.parse().map_err(|_| bad())?,
        code: code.to_string(),
        message: message.to_string(),
    })
}

/// Writes the table to `dest` (a file path) or to standard output when `None`.
pub fn write_csv(table: &SweepTable, dest: Option<&Path>) -> Result<()> {
    let text = table.to_csv();
    match dest {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
