//! Plain-text table files.
//!
//! ```text
//! # lines starting with '#' are ignored
//! group 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! ```
//!
//! A ring file starts with `ring <n>`, lists the addition table, one blank
//! line, then the multiplication table.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::algebra::{AlgebraError, CayleyTable};
use crate::ring::{RingError, RingTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableFile {
    Group(CayleyTable),
    Ring(RingTable),
}

impl TableFile {
    pub fn kind(&self) -> &'static str {
        match self {
            TableFile::Group(_) => "group",
            TableFile::Ring(_) => "ring",
        }
    }

    pub fn order(&self) -> usize {
        match self {
            TableFile::Group(g) => g.order(),
            TableFile::Ring(r) => r.order(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error(transparent)]
    Group(#[from] AlgebraError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Error)]
pub enum TableFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid table: {0}")]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn syntax(line: usize, message: impl Into<String>) -> TableFileError {
    TableFileError::Syntax { line, message: message.into() }
}

pub fn parse_table_file(path: impl AsRef<Path>) -> Result<TableFile, TableFileError> {
    parse_table_str(&std::fs::read_to_string(path)?)
}

/// Lines that are not comments, numbered from one.
struct Lines<'s> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'s str)> + 's>>,
    last: usize,
}

impl<'s> Lines<'s> {
    fn new(text: &'s str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'s str)>> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.starts_with('#')),
        );
        Lines { inner: it.peekable(), last: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'s str)> {
        let item = self.inner.next();
        if let Some((n, _)) = item {
            self.last = n;
        }
        item
    }

    fn skip_blank(&mut self) {
        while matches!(self.inner.peek(), Some((_, l)) if l.is_empty()) {
            self.next();
        }
    }

    fn rows(&mut self, n: usize) -> Result<Vec<Vec<usize>>, TableFileError> {
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (line, text) = match self.next() {
                Some((line, text)) if !text.is_empty() => (line, text),
                Some((line, _)) => return Err(syntax(line, format!("expected {n} rows, found {}", rows.len()))),
                None => return Err(syntax(self.last + 1, format!("expected {n} rows, found {}", rows.len()))),
            };
            let row = text
                .split_whitespace()
                .map(|w| w.parse::<usize>().map_err(|_| syntax(line, format!("not an index: {w}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != n {
                return Err(syntax(line, format!("expected {n} entries, found {}", row.len())));
            }
            rows.push(row);
        }
        Ok(rows)
    }
}

pub fn parse_table_str(text: &str) -> Result<TableFile, TableFileError> {
    let mut lines = Lines::new(text);
    lines.skip_blank();
    let (line, header) = lines.next().ok_or_else(|| syntax(1, "empty file"))?;
    let mut words = header.split_whitespace();
    let kind = words.next().unwrap_or_default();
    let n = words
        .next()
        .and_then(|w| w.parse::<usize>().ok())
        .ok_or_else(|| syntax(line, "header must be `group <n>` or `ring <n>`"))?;
    if words.next().is_some() {
        return Err(syntax(line, "trailing text in header"));
    }
    let file = match kind {
        "group" => {
            let rows = lines.rows(n)?;
            TableFile::Group(CayleyTable::new(n, &rows).map_err(ValidationError::from)?)
        }
        "ring" => {
            let add = lines.rows(n)?;
            match lines.next() {
                Some((_, "")) => {}
                Some((line, _)) => return Err(syntax(line, "expected a blank line between the tables")),
                None => return Err(syntax(lines.last + 1, "missing multiplication table")),
            }
            let mul = lines.rows(n)?;
            TableFile::Ring(RingTable::new(n, &add, &mul).map_err(ValidationError::from)?)
        }
        other => return Err(syntax(line, format!("unknown table kind `{other}`"))),
    };
    lines.skip_blank();
    if let Some((line, _)) = lines.next() {
        return Err(syntax(line, "unexpected content after the table"));
    }
    Ok(file)
}

fn write_rows(out: &mut String, rows: &[Vec<usize>]) {
    for row in rows {
        let words: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", words.join(" "));
    }
}

pub fn group_to_string(g: &CayleyTable) -> String {
    let mut out = format!("group {}\n", g.order());
    write_rows(&mut out, &g.rows());
    out
}

pub fn ring_to_string(r: &RingTable) -> String {
    let mut out = format!("ring {}\n", r.order());
    write_rows(&mut out, &r.add_rows());
    out.push('\n');
    write_rows(&mut out, &r.mul_rows());
    out
}

pub fn to_string(file: &TableFile) -> String {
    match file {
        TableFile::Group(g) => group_to_string(g),
        TableFile::Ring(r) => ring_to_string(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{make_group, small_ring_specs, make_ring};

    #[test]
    fn parses_z3_with_comments() {
        let text = "# cyclic\ngroup 3\n0 1 2\n# middle\n1 2 0\n2 0 1\n";
        let TableFile::Group(g) = parse_table_str(text).unwrap() else { panic!() };
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn short_table_is_a_syntax_error() {
        let err = parse_table_str("group 3\n0 1 2\n1 2 0\n").unwrap_err();
        assert!(matches!(err, TableFileError::Syntax { line: 4, .. }), "{err}");
        assert!(matches!(parse_table_str("group 2\n0 1\n1\n"), Err(TableFileError::Syntax { line: 3, .. })));
        assert!(matches!(parse_table_str("monoid 2\n"), Err(TableFileError::Syntax { line: 1, .. })));
        assert!(matches!(
            parse_table_str("group 1\n0\n0\n"),
            Err(TableFileError::Syntax { line: 3, .. })
        ));
    }

    #[test]
    fn bad_ring_is_a_validation_error() {
        let text = "ring 2\n0 1\n1 0\n\n0 0\n1 0\n";
        assert!(matches!(
            parse_table_str(text),
            Err(TableFileError::Validation(ValidationError::Ring(RingError::NotDistributive(..))))
        ));
        let text = "group 2\n0 1\n1 1\n";
        assert!(matches!(
            parse_table_str(text),
            Err(TableFileError::Validation(ValidationError::Group(AlgebraError::MissingInverse(1))))
        ));
    }

    #[test]
    fn round_trips() {
        for spec in ["cyclic 5", "symmetric 3", "product(quaternion8, cyclic 3)", "heisenberg 3"] {
            let g = make_group(spec, 256).unwrap();
            let parsed = parse_table_str(&group_to_string(&g)).unwrap();
            assert_eq!(parsed, TableFile::Group(g));
        }
        for spec in small_ring_specs() {
            let r = make_ring(spec, 256).unwrap();
            assert_eq!(parse_table_str(&ring_to_string(&r)).unwrap(), TableFile::Ring(r));
        }
    }
}
