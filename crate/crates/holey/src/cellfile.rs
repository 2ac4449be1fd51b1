//! Plain-text cell files.
//!
//! Line 1 is the header `d <dim>`. Every following non-comment, non-blank
//! line holds `dim` space-separated integers naming one cell. `#` starts a
//! comment. Duplicate cells are rejected. Cells are written back in
//! lexicographic order, so `write(parse(f))` is stable up to comments and
//! input ordering.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::polyomino::CellSet;
use crate::{Error, Result};

pub fn read_cells(path: &Path) -> Result<CellSet> {
    parse_cells(BufReader::new(File::open(path)?))
}

pub fn parse_cells<R: BufRead>(reader: R) -> Result<CellSet> {
    let mut lines = reader.lines();
    let header = match lines.next() {
        Some(line) => line?,
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "empty file, expected header `d <dim>`".into(),
            })
        }
    };
    let dim = parse_header(&header)?;
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        let line = line?;
        let content = match line.find('#') {
            Some(pos) => &line[..pos],
            None => &line[..],
        };
        if content.trim().is_empty() {
            continue;
        }
        let mut cell = Vec::with_capacity(dim);
        for token in content.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("`{token}` is not an integer"),
            })?;
            cell.push(value);
        }
        if cell.len() != dim {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {dim} coordinates, found {}", cell.len()),
            });
        }
        if !seen.insert(cell) {
            return Err(Error::Parse {
                line: line_no,
                message: "duplicate cell".into(),
            });
        }
    }
    CellSet::from_cells(dim, seen)
}

fn parse_header(header: &str) -> Result<usize> {
    let mut tokens = header.split_whitespace();
    let bad = || Error::Parse {
        line: 1,
        message: format!("expected header `d <dim>`, found `{header}`"),
    };
    if tokens.next() != Some("d") {
        return Err(bad());
    }
    let dim: usize = tokens.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if tokens.next().is_some() {
        return Err(bad());
    }
    if dim < 2 {
        return Err(Error::InvalidDimension { got: dim, min: 2 });
    }
    Ok(dim)
}

/// Renders the set in the cell file format, cells in lexicographic order.
/// `comments` are emitted after the header, one `#` line each.
pub fn format_cells(set: &CellSet, comments: &[&str]) -> String {
    let mut out = format!("d {}\n", set.dim());
    for comment in comments {
        out.push_str("# ");
        out.push_str(comment);
        out.push('\n');
    }
    for cell in set.iter() {
        let words: Vec<String> = cell.iter().map(|c| c.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_cells(path: &Path, set: &CellSet, comments: &[&str]) -> Result<()> {
    let mut file = File::create(path)?;
    file.write_all(format_cells(set, comments).as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn parse(text: &str) -> Result<CellSet> {
        parse_cells(Cursor::new(text))
    }

    #[test]
    fn single_cell() {
        let set = parse("d 2\n0 0\n").unwrap();
        assert_eq!(set.len(), 1);
        assert!(set.contains(&[0, 0]));
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let set = parse("d 3\n# a comment\n\n1 2 3  # trailing comment\n").unwrap();
        assert_eq!(set.len(), 1);
        assert!(set.contains(&[1, 2, 3]));
    }

    #[test]
    fn duplicate_line_names_the_line() {
        let err = parse("d 2\n0 0\n1 1\n0 0\n").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 4);
                assert!(message.contains("duplicate"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn wrong_arity_names_the_line() {
        let err = parse("d 2\n0 0\n1 2 3\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn malformed_header_rejected() {
        assert!(matches!(parse("dim 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("d x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse("d 1\n"),
            Err(Error::InvalidDimension { got: 1, .. })
        ));
    }

    #[test]
    fn round_trip_is_stable() {
        let set = parse("d 2\n3 4\n0 0\n-1 7\n").unwrap();
        let text = format_cells(&set, &[]);
        assert_eq!(text, "d 2\n-1 7\n0 0\n3 4\n");
        let again = parse(&text).unwrap();
        assert_eq!(again, set);
        assert_eq!(format_cells(&again, &[]), text);
    }
}
