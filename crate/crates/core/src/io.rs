//! The plain-text matroid file format.
//!
//! ```text
//! matroid R12
//! rank 6
//! elements 12
//! field 2
//! labels 1 2 3 4 5 6 7 8 9 10 11 12
//! 1 0 0 0 0 0 1 1 1 0 0 0
//! ...
//! ```
//!
//! The `labels` line is optional. The `r` data rows hold the full standard
//! matrix `[I_r | D]`. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::matroid::{BinaryMatroid, ElementId};

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn error(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    /// Whitespace-separated tokens with their 1-based columns.
    fn tokens(&self) -> impl Iterator<Item = (usize, &str)> {
        let base = self.text.as_ptr() as usize;
        self.text
            .split_whitespace()
            .map(move |t| (t.as_ptr() as usize - base + 1, t))
    }
}

fn keyword<'a>(line: &Line<'a>, key: &str) -> Result<&'a str> {
    let mut tokens = line.tokens();
    match tokens.next() {
        Some((column, k)) if k == key => {
            let rest = line.text[column - 1 + key.len()..].trim();
            if rest.is_empty() {
                Err(line.error(column + key.len(), format!("missing value after `{key}`")))
            } else {
                Ok(rest)
            }
        }
        Some((column, _)) => Err(line.error(column, format!("expected `{key} ...`"))),
        None => Err(line.error(1, format!("expected `{key} ...`"))),
    }
}

fn number(line: &Line<'_>, key: &str) -> Result<usize> {
    let value = keyword(line, key)?;
    let column = value.as_ptr() as usize - line.text.as_ptr() as usize + 1;
    value
        .parse()
        .map_err(|_| line.error(column, format!("`{value}` is not a non-negative integer")))
}

/// Parses a matroid file. With `standardize`, a matrix whose leading columns
/// are not an identity is row-reduced and its pivot columns moved to the
/// front; otherwise such a file is rejected with `NonStandardForm`.
pub fn parse(text: &str, standardize: bool) -> Result<BinaryMatroid> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, text)| Line {
            number: i + 1,
            text,
        })
        .filter(|l| !l.text.trim().is_empty() && !l.text.trim_start().starts_with('#'));
    let mut next = |what: &str| {
        lines.next().ok_or_else(|| Error::Parse {
            line: text.lines().count() + 1,
            column: 1,
            message: format!("unexpected end of file, expected {what}"),
        })
    };

    let name = keyword(&next("`matroid <name>`")?, "matroid")?.to_string();
    let rank = number(&next("`rank <r>`")?, "rank")?;
    let n = number(&next("`elements <n>`")?, "elements")?;
    let field_line = next("`field 2`")?;
    let field = keyword(&field_line, "field")?;
    if field != "2" {
        let column = field.as_ptr() as usize - field_line.text.as_ptr() as usize + 1;
        return Err(field_line.error(column, "only `field 2` is supported"));
    }
    if rank > n {
        return Err(Error::DimensionMismatch(format!(
            "rank {rank} exceeds {n} elements"
        )));
    }

    let mut labels = None;
    let mut rows = Vec::with_capacity(rank);
    for line in lines {
        let first = line.text.split_whitespace().next().unwrap_or_default();
        if first == "labels" {
            if labels.is_some() || !rows.is_empty() {
                return Err(line.error(1, "`labels` must come once, before the matrix"));
            }
            let ids = line
                .tokens()
                .skip(1)
                .map(|(column, t)| {
                    t.parse()
                        .map(ElementId)
                        .map_err(|_| line.error(column, format!("`{t}` is not an element label")))
                })
                .collect::<Result<Vec<_>>>()?;
            if ids.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "line {}: {} labels for {n} elements",
                    line.number,
                    ids.len()
                )));
            }
            labels = Some(ids);
            continue;
        }
        let bits = line
            .tokens()
            .map(|(column, t)| match t {
                "0" => Ok(false),
                "1" => Ok(true),
                _ => Err(line.error(column, format!("expected 0 or 1, found `{t}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "line {}: row of {} entries for {n} elements",
                line.number,
                bits.len()
            )));
        }
        rows.push(Gf2Vector::from_bits(&bits));
    }
    if rows.len() != rank {
        return Err(Error::DimensionMismatch(format!(
            "{} data rows for rank {rank}",
            rows.len()
        )));
    }

    let matrix = Gf2Matrix::from_rows(&rows, n)?;
    let standard = (0..rank).all(|i| (0..rank).all(|j| matrix.get(i, j) == (i == j)));
    let m = if standard {
        BinaryMatroid::from_matrix(&matrix, labels)?
    } else if standardize {
        let m = BinaryMatroid::from_matrix_any_basis(&matrix, labels)?;
        if m.rank() != rank {
            return Err(Error::DimensionMismatch(format!(
                "declared rank {rank} but the matrix has rank {}",
                m.rank()
            )));
        }
        m
    } else {
        return Err(Error::NonStandardForm { rank });
    };
    Ok(m.with_name(name))
}

/// Renders `m` in the file format, always with a `labels` line.
pub fn to_text(m: &BinaryMatroid) -> String {
    let mut out = String::new();
    let name = if m.name().trim().is_empty() {
        "M"
    } else {
        m.name()
    };
    let _ = writeln!(out, "matroid {name}");
    let _ = writeln!(out, "rank {}", m.rank());
    let _ = writeln!(out, "elements {}", m.len());
    let _ = writeln!(out, "field 2");
    let labels: Vec<String> = m.elements().iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "labels {}", labels.join(" "));
    let rep = m.rep();
    for i in 0..rep.rows() {
        let row: Vec<&str> = (0..rep.cols())
            .map(|j| if rep.get(i, j) { "1" } else { "0" })
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn load(path: impl AsRef<Path>, standardize: bool) -> Result<BinaryMatroid> {
    parse(&std::fs::read_to_string(path)?, standardize)
}

pub fn save(m: &BinaryMatroid, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_text(m))?;
    Ok(())
}
