//! Text and JSON readers and writers for quandle and group tables.
//!
//! Text format: the first line holds `n`, the next `n` lines hold the rows of
//! the table as space-separated 0-based entries (row `i` is `λ_i`). Group
//! tables add a trailing line `id <index>`. Blank lines and lines starting
//! with `#` are skipped. The JSON mirror is `{"n": .., "table": [[..]]}`,
//! plus `"id"` for groups.

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::group::FiniteGroup;
use crate::limits::Limits;
use crate::quandle::FiniteQuandle;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuandleJson {
    n: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupJson {
    n: usize,
    table: Vec<Vec<usize>>,
    id: usize,
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next significant line with its 1-based number.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            let t = line.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Some((i + 1, line));
            }
        }
        None
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(move |(byte, tok)| (line[..byte].chars().count() + 1, tok))
}

fn number(line: usize, col: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| {
        ParseError::new(
            line,
            col,
            format!("expected a non-negative integer, found `{tok}`"),
        )
    })
}

fn read_rows(lines: &mut Lines<'_>, limits: &Limits) -> Result<Vec<Vec<usize>>, ParseError> {
    let (ln, first) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "missing element count"))?;
    let mut toks = tokens(first);
    let (col, tok) = toks.next().expect("significant line has a token");
    let n = number(ln, col, tok)?;
    if let Some((col, tok)) = toks.next() {
        return Err(ParseError::new(
            ln,
            col,
            format!("unexpected `{tok}` after element count"),
        ));
    }
    if n > limits.max_order {
        return Err(ParseError::new(
            ln,
            col,
            format!(
                "order {n} exceeds the configured cap of {}",
                limits.max_order
            ),
        ));
    }
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let (ln, line) = lines.next().ok_or_else(|| {
            ParseError::new(lines.last + 1, 1, format!("expected {n} rows, found {r}"))
        })?;
        let mut row = Vec::with_capacity(n);
        for (col, tok) in tokens(line) {
            if row.len() == n {
                return Err(ParseError::new(
                    ln,
                    col,
                    format!("row {r} has more than {n} entries"),
                ));
            }
            let v = number(ln, col, tok)?;
            if v >= n {
                return Err(ParseError::new(
                    ln,
                    col,
                    format!("entry {v} out of range for order {n}"),
                ));
            }
            row.push(v);
        }
        if row.len() < n {
            let col = line.chars().count() + 1;
            return Err(ParseError::new(
                ln,
                col,
                format!("row {r} has {} entries, expected {n}", row.len()),
            ));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn json_error(e: serde_json::Error) -> ParseError {
    ParseError::new(e.line().max(1), e.column().max(1), e.to_string())
}

/// Checks declared size, shape and range of a JSON table; positions are table
/// cells (1-based row and column).
fn check_json_table(n: usize, table: &[Vec<usize>], limits: &Limits) -> Result<(), ParseError> {
    if n > limits.max_order {
        return Err(ParseError::new(
            1,
            1,
            format!(
                "order {n} exceeds the configured cap of {}",
                limits.max_order
            ),
        ));
    }
    if table.len() != n {
        return Err(ParseError::new(
            table.len().min(n) + 1,
            1,
            format!("expected {n} rows, found {}", table.len()),
        ));
    }
    for (r, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(ParseError::new(
                r + 1,
                row.len().min(n) + 1,
                format!(
                    "table row {} has {} entries, expected {n}",
                    r + 1,
                    row.len()
                ),
            ));
        }
        if let Some(c) = row.iter().position(|&v| v >= n) {
            return Err(ParseError::new(
                r + 1,
                c + 1,
                format!(
                    "table row {}, column {}: entry {} out of range for order {n}",
                    r + 1,
                    c + 1,
                    row[c]
                ),
            ));
        }
    }
    Ok(())
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

pub fn parse_quandle(text: &str) -> Result<FiniteQuandle> {
    parse_quandle_with_limits(text, &Limits::default())
}

/// Reads a quandle table in either text or JSON form.
pub fn parse_quandle_with_limits(text: &str, limits: &Limits) -> Result<FiniteQuandle> {
    let rows = if looks_like_json(text) {
        let doc: QuandleJson = serde_json::from_str(text).map_err(json_error)?;
        check_json_table(doc.n, &doc.table, limits)?;
        doc.table
    } else {
        let mut lines = Lines::new(text);
        let rows = read_rows(&mut lines, limits)?;
        if let Some((ln, _)) = lines.next() {
            return Err(ParseError::new(ln, 1, "unexpected content after the table").into());
        }
        rows
    };
    FiniteQuandle::from_rows_with_limits(rows, limits)
}

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    parse_group_with_limits(text, &Limits::default())
}

/// Reads a group table in either text or JSON form.
pub fn parse_group_with_limits(text: &str, limits: &Limits) -> Result<FiniteGroup> {
    let (rows, id) = if looks_like_json(text) {
        let doc: GroupJson = serde_json::from_str(text).map_err(json_error)?;
        check_json_table(doc.n, &doc.table, limits)?;
        (doc.table, doc.id)
    } else {
        let mut lines = Lines::new(text);
        let rows = read_rows(&mut lines, limits)?;
        let (ln, line) = lines
            .next()
            .ok_or_else(|| ParseError::new(lines.last + 1, 1, "missing `id <index>` line"))?;
        let toks: Vec<_> = tokens(line).collect();
        let id = match toks.as_slice() {
            [(_, "id"), (col, v)] => number(ln, *col, v)?,
            _ => return Err(ParseError::new(ln, 1, "expected `id <index>`").into()),
        };
        if let Some((ln, _)) = lines.next() {
            return Err(
                ParseError::new(ln, 1, "unexpected content after the identity line").into(),
            );
        }
        (rows, id)
    };
    FiniteGroup::from_table_with_limits(rows, id, limits)
}

pub fn quandle_to_text(q: &FiniteQuandle) -> String {
    let mut s = format!("{}\n", q.len());
    for x in 0..q.len() {
        let row: Vec<String> = q.row(x).iter().map(usize::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn quandle_to_json(q: &FiniteQuandle) -> String {
    serde_json::to_string(&QuandleJson {
        n: q.len(),
        table: q.rows(),
    })
    .expect("serialisable")
}

pub fn group_to_text(g: &FiniteGroup) -> String {
    let mut s = format!("{}\n", g.order());
    for row in g.rows() {
        let row: Vec<String> = row.iter().map(usize::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s.push_str(&format!("id {}\n", g.identity()));
    s
}

pub fn group_to_json(g: &FiniteGroup) -> String {
    serde_json::to_string(&GroupJson {
        n: g.order(),
        table: g.rows(),
        id: g.identity(),
    })
    .expect("serialisable")
}

/// Unwraps the position of a parse failure, for diagnostics.
pub fn parse_position(e: &Error) -> Option<(usize, usize)> {
    match e {
        Error::Parse(p) => Some((p.line, p.column)),
        _ => None,
    }
}
