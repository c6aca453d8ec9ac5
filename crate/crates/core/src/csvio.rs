//! Headerless comma-separated matrices: one row per line.
//!
//! Values are written with 17 significant digits, which is enough for every
//! `f64` to survive a write/read cycle bit-exactly.

use crate::error::{Error, Result};
use crate::symmat::SymMatrix;

/// Parses a rectangular matrix. Blank lines are skipped; surrounding
/// whitespace around each field is ignored.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let row = trimmed
            .split(',')
            .map(|field| {
                let field = field.trim();
                let v: f64 = field.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("not a number: {field:?}"),
                })?;
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::Parse {
                        line: line_no,
                        message: format!("non-finite value: {field:?}"),
                    })
                }
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {} fields, found {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no rows".into(),
        });
    }
    Ok(rows)
}

/// Parses and validates a symmetric matrix.
pub fn parse_sym_matrix(text: &str) -> Result<SymMatrix> {
    SymMatrix::from_rows(&parse_matrix(text)?)
}

pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn format_matrix(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(|&v| format_value(v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn format_sym_matrix(m: &SymMatrix) -> String {
    format_matrix(&m.to_rows())
}
