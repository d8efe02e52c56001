//! Plain-text '0'/'1' seed patterns, one lattice row per line.

use std::fs;
use std::path::Path;

use ca_core::{Dims, Lattice};

use crate::error::{io_err, Result, ToolError};

pub fn parse_pattern(text: &str, path: &Path) -> Result<Vec<Vec<bool>>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let row = line
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ToolError::Format {
                    path: path.to_path_buf(),
                    line: i + 1,
                    message: format!("unexpected character {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let width = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || width == 0 {
        return Err(ToolError::Format {
            path: path.to_path_buf(),
            line: 1,
            message: "empty pattern".into(),
        });
    }
    if let Some(i) = rows.iter().position(|r| r.len() != width) {
        return Err(ToolError::Format {
            path: path.to_path_buf(),
            line: i + 1,
            message: format!("row has {} cells, expected {width}", rows[i].len()),
        });
    }
    Ok(rows)
}

pub fn read_pattern(path: &Path) -> Result<Vec<Vec<bool>>> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_pattern(&text, path)
}

/// Places `rows` centered in an otherwise empty lattice of shape `dims`.
pub fn centered(rows: &[Vec<bool>], dims: Dims) -> Result<Lattice> {
    let (h, w) = (rows.len(), rows.first().map_or(0, Vec::len));
    if h > dims.rows() || w > dims.cols() {
        return Err(ToolError::Invalid(format!(
            "{h}x{w} pattern does not fit a {dims} lattice"
        )));
    }
    let mut lattice = Lattice::new(dims)?;
    let (r0, c0) = ((dims.rows() - h) / 2, (dims.cols() - w) / 2);
    for (r, row) in rows.iter().enumerate() {
        for (c, &b) in row.iter().enumerate() {
            lattice.set(r0 + r, c0 + c, b);
        }
    }
    Ok(lattice)
}

pub fn format_lattice(l: &Lattice) -> String {
    let mut out = String::with_capacity(l.rows() * (l.cols() + 1));
    for row in l.to_rows() {
        out.extend(row.iter().map(|&b| if b { '1' } else { '0' }));
        out.push('\n');
    }
    out
}
