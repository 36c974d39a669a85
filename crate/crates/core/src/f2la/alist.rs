//! MacKay's "alist" sparse matrix text format.
//!
//! ```text
//! N M                      columns, rows
//! maxcol maxrow            largest column / row degree
//! d_1 ... d_N              column degrees
//! e_1 ... e_M              row degrees
//! (N lines)                1-based row indices of each column, zero-padded to maxcol
//! (M lines)                1-based column indices of each row, zero-padded to maxrow
//! ```
//!
//! [`write`] emits single-space separated fields with `\n` line endings;
//! reading that output and writing it again reproduces it byte for byte.

use std::fmt::Write as _;
use std::path::Path;

use super::matrix::F2Matrix;
use crate::error::{Error, Result};

fn join(nums: impl Iterator<Item = usize>) -> String {
    let mut s = String::new();
    for (i, n) in nums.enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{n}");
    }
    s
}

pub fn write(m: &F2Matrix) -> String {
    let view = m.sparse_view();
    let max_col = view.col_support.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = view.row_support.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", m.cols(), m.rows());
    let _ = writeln!(out, "{max_col} {max_row}");
    let _ = writeln!(out, "{}", join(view.col_support.iter().map(Vec::len)));
    let _ = writeln!(out, "{}", join(view.row_support.iter().map(Vec::len)));
    for col in &view.col_support {
        let padded = col
            .iter()
            .map(|&r| r + 1)
            .chain(std::iter::repeat(0))
            .take(max_col);
        let _ = writeln!(out, "{}", join(padded));
    }
    for row in &view.row_support {
        let padded = row
            .iter()
            .map(|&c| c + 1)
            .chain(std::iter::repeat(0))
            .take(max_row);
        let _ = writeln!(out, "{}", join(padded));
    }
    out
}

fn parse_line(line: Option<&str>, what: &str) -> Result<Vec<usize>> {
    let line = line.ok_or_else(|| Error::Parse(format!("alist: missing {what}")))?;
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("alist: bad integer {t:?} in {what}")))
        })
        .collect()
}

/// Parse alist text. Both zero-padded and unpadded index lists are accepted;
/// the column and row descriptions must agree.
pub fn parse(text: &str) -> Result<F2Matrix> {
    let mut lines = text.lines();
    let header = parse_line(lines.next(), "size line")?;
    let [cols, rows] = header[..] else {
        return Err(Error::Parse("alist: size line needs two integers".into()));
    };
    let maxes = parse_line(lines.next(), "max degree line")?;
    let [max_col, max_row] = maxes[..] else {
        return Err(Error::Parse(
            "alist: max degree line needs two integers".into(),
        ));
    };
    let col_deg = parse_line(lines.next(), "column degrees")?;
    let row_deg = parse_line(lines.next(), "row degrees")?;
    if col_deg.len() != cols || row_deg.len() != rows {
        return Err(Error::Parse("alist: degree list length mismatch".into()));
    }
    let mut m = F2Matrix::zeros(rows, cols);
    for (j, &deg) in col_deg.iter().enumerate() {
        let entries: Vec<usize> = parse_line(lines.next(), "column list")?
            .into_iter()
            .filter(|&x| x != 0)
            .collect();
        if entries.len() != deg || deg > max_col {
            return Err(Error::Parse(format!(
                "alist: column {} degree mismatch",
                j + 1
            )));
        }
        for r in entries {
            if r > rows {
                return Err(Error::Parse(format!("alist: row index {r} out of range")));
            }
            m.set(r - 1, j, true);
        }
    }
    for (i, &deg) in row_deg.iter().enumerate() {
        let entries: Vec<usize> = parse_line(lines.next(), "row list")?
            .into_iter()
            .filter(|&x| x != 0)
            .collect();
        if entries.len() != deg || deg > max_row {
            return Err(Error::Parse(format!(
                "alist: row {} degree mismatch",
                i + 1
            )));
        }
        for c in entries {
            if c > cols || !m.get(i, c - 1) {
                return Err(Error::Parse(format!(
                    "alist: row {} lists column {c} absent from the column lists",
                    i + 1
                )));
            }
        }
    }
    Ok(m)
}

pub fn read_file(path: impl AsRef<Path>) -> Result<F2Matrix> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn write_file(path: impl AsRef<Path>, m: &F2Matrix) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, write(m)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
