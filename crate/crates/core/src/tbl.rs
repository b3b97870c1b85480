//! The `.tbl` Cayley-table text format.
//!
//! ```text
//! # name: cyclic:3
//! 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! ```
//!
//! Lines starting with `#` are comments; the first other line holds `n`,
//! followed by `n` rows of `n` whitespace-separated entries.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::table::{normalize_identity, CayleyTable};

/// A parsed table with identity moved to index 0.
#[derive(Clone, Debug)]
pub struct Imported {
    pub table: CayleyTable,
    /// Relabelling applied during normalization (old index ↦ new index).
    pub relabel: Permutation,
    pub comments: Vec<String>,
}

fn format_err(source: &str, line: usize, reason: impl Into<String>) -> Error {
    Error::TableFormat {
        path: source.to_string(),
        line,
        reason: reason.into(),
    }
}

/// Parses table text; `source` names the input in error messages.
pub fn parse(text: &str, source: &str) -> Result<Imported> {
    let mut comments = Vec::new();
    let mut name = None;
    let mut n: Option<usize> = None;
    let mut cells = Vec::new();
    let mut rows = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(value) = comment.strip_prefix("name:") {
                name = Some(value.trim().to_string());
            }
            comments.push(comment.to_string());
            continue;
        }
        if line.is_empty() {
            continue;
        }
        match n {
            None => {
                let value: usize = line
                    .parse()
                    .map_err(|_| format_err(source, line_no, format!("expected order, found `{line}`")))?;
                if value == 0 {
                    return Err(format_err(source, line_no, "order must be positive"));
                }
                n = Some(value);
            }
            Some(order) => {
                if rows == order {
                    return Err(format_err(source, line_no, format!("extra row beyond the {order} declared")));
                }
                let before = cells.len();
                for tok in line.split_whitespace() {
                    let v: usize = tok
                        .parse()
                        .map_err(|_| format_err(source, line_no, format!("bad entry `{tok}`")))?;
                    if v >= order {
                        return Err(format_err(
                            source,
                            line_no,
                            format!("entry {v} out of range 0..{order}"),
                        ));
                    }
                    cells.push(v);
                }
                let got = cells.len() - before;
                if got != order {
                    return Err(format_err(
                        source,
                        line_no,
                        format!("row has {got} entries, expected {order}"),
                    ));
                }
                rows += 1;
            }
        }
    }
    let n = n.ok_or_else(|| format_err(source, 0, "missing order line"))?;
    if rows != n {
        return Err(format_err(
            source,
            text.lines().count(),
            format!("found {rows} rows, expected {n}"),
        ));
    }
    let raw = CayleyTable::from_cells(n, cells, name.unwrap_or_else(|| source.to_string()))?;
    let (table, relabel) = normalize_identity(&raw);
    Ok(Imported {
        table,
        relabel,
        comments,
    })
}

pub fn read_path(path: &Path) -> Result<Imported> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text, &path.display().to_string())
}

/// Serializes a table with a `# name:` header and any extra comment lines.
pub fn to_string(table: &CayleyTable, extra_comments: &[String]) -> String {
    let mut out = String::new();
    writeln!(out, "# name: {}", table.name()).unwrap();
    for c in extra_comments {
        writeln!(out, "# {c}").unwrap();
    }
    writeln!(out, "{}", table.n()).unwrap();
    for x in 0..table.n() {
        let row: Vec<String> = table.row(x).map(|v| v.to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

/// Writes [`to_string`] output to `path`, normalizing the identity first.
pub fn write_path(path: &Path, table: &CayleyTable, extra_comments: &[String]) -> Result<()> {
    let (table, _) = normalize_identity(table);
    std::fs::write(path, to_string(&table, extra_comments)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// The table body without comment lines, for byte comparisons that ignore provenance.
pub fn body(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::build_table;

    #[test]
    fn exports_cyclic_three() {
        let t = build_table(3, "cyclic:3", |x, y| (x + y) % 3).unwrap();
        let text = to_string(&t, &[]);
        assert_eq!(body(&text), "3\n0 1 2\n1 2 0\n2 0 1\n");
        assert!(text.starts_with("# name: cyclic:3\n"));
    }

    #[test]
    fn roundtrip_preserves_table_and_name() {
        let t = build_table(5, "cyclic:5", |x, y| (x + y) % 5).unwrap();
        let back = parse(&to_string(&t, &["source: test".into()]), "mem").unwrap();
        assert_eq!(back.table, t);
        assert!(back.relabel.is_identity());
        assert_eq!(back.comments, vec!["name: cyclic:5", "source: test"]);
    }

    #[test]
    fn import_normalizes_identity() {
        let text = "3\n1 2 0\n2 0 1\n0 1 2\n";
        let imp = parse(text, "shifted").unwrap();
        assert_eq!(imp.relabel.apply(2), 0);
        assert_eq!(imp.table.mul(0, 1), 1);
    }

    #[test]
    fn malformed_inputs_report_line_numbers() {
        let cases = [
            ("# c\nx\n", 2, "expected order"),
            ("2\n0 1\n1 5\n", 3, "out of range"),
            ("2\n0 1\n1\n", 3, "expected 2"),
            ("2\n0 1\n", 2, "found 1 rows"),
            ("2\n0 1\n1 0\n0 1\n", 4, "extra row"),
            ("2\n0 q\n1 0\n", 2, "bad entry"),
        ];
        for (text, line, needle) in cases {
            match parse(text, "in") {
                Err(Error::TableFormat { line: l, reason, .. }) => {
                    assert_eq!(l, line, "{text:?}");
                    assert!(reason.contains(needle), "{reason} lacks {needle}");
                }
                other => panic!("{text:?}: expected format error, got {other:?}"),
            }
        }
    }
}
