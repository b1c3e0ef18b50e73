//! Graph file readers and writers.
//!
//! Two text formats: plain edge lists (one "u v" pair per line, `#`/`%`
//! comments) and MatrixMarket coordinate files (pattern/real/integer,
//! symmetric or general). Ids come out 0-based; MatrixMarket's 1-based ids
//! are shifted down on read. Cleanup (dedup, self-loop removal) is not done
//! here — that is [`crate::graph::canonicalize`]'s job.

use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::graph::RawEdgeList;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputFormat {
    EdgeList,
    MatrixMarket,
}

impl InputFormat {
    /// Picks a format from the file extension: `.mtx` means MatrixMarket,
    /// anything else is treated as an edge list.
    pub fn infer(path: &Path) -> InputFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("mtx") => InputFormat::MatrixMarket,
            _ => InputFormat::EdgeList,
        }
    }
}

#[derive(Debug)]
pub enum LoadError {
    Io(io::Error),
    /// Unparseable content; carries the 1-based line number.
    Parse {
        line: usize,
        message: String,
    },
    /// A vertex id that does not fit the platform id width.
    IdOverflow {
        line: usize,
        id: u128,
    },
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(e) => write!(f, "i/o error: {e}"),
            LoadError::Parse { line, message } => {
                write!(f, "parse error at line {line}: {message}")
            }
            LoadError::IdOverflow { line, id } => {
                write!(f, "vertex id {id} at line {line} overflows the id width")
            }
        }
    }
}

impl std::error::Error for LoadError {}

impl From<io::Error> for LoadError {
    fn from(e: io::Error) -> Self {
        LoadError::Io(e)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> LoadError {
    LoadError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_id(token: &str, line: usize) -> Result<usize, LoadError> {
    let wide: u128 = token
        .parse()
        .map_err(|_| parse_err(line, format!("expected a vertex id, got {token:?}")))?;
    usize::try_from(wide).map_err(|_| LoadError::IdOverflow { line, id: wide })
}

/// Loads raw pairs from `path` in the declared format.
pub fn load_edge_list(path: &Path, format: InputFormat) -> Result<RawEdgeList, LoadError> {
    let reader = BufReader::new(File::open(path)?);
    match format {
        InputFormat::EdgeList => read_edge_list(reader),
        InputFormat::MatrixMarket => read_matrix_market(reader),
    }
}

/// Edge-list text: one pair per line, `#` or `%` lines and blank lines skipped.
/// Extra whitespace-separated tokens after the pair (weights) are ignored.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<RawEdgeList, LoadError> {
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let u = tokens
            .next()
            .ok_or_else(|| parse_err(lineno, "missing source id"))?;
        let v = tokens
            .next()
            .ok_or_else(|| parse_err(lineno, "missing destination id"))?;
        edges.push((parse_id(u, lineno)?, parse_id(v, lineno)?));
    }
    Ok(RawEdgeList { n_hint: 0, edges })
}

/// MatrixMarket coordinate reader. Accepts `pattern`, `real`, or `integer`
/// fields (values ignored) with `symmetric` or `general` symmetry; entries
/// are shifted to 0-based ids. `n_hint` is set from the size line.
pub fn read_matrix_market<R: BufRead>(reader: R) -> Result<RawEdgeList, LoadError> {
    let mut lines = reader.lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file"))?
        .1
        .map(|h| (1usize, h))
        .map_err(LoadError::Io)?;
    let lower = header.to_ascii_lowercase();
    let fields: Vec<&str> = lower.split_whitespace().collect();
    if fields.len() < 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" {
        return Err(parse_err(1, "expected a %%MatrixMarket matrix header"));
    }
    if fields[2] != "coordinate" {
        return Err(parse_err(1, format!("unsupported layout {:?}", fields[2])));
    }
    let field = fields[3];
    if !matches!(field, "pattern" | "real" | "integer") {
        return Err(parse_err(1, format!("unsupported field type {field:?}")));
    }
    if !matches!(fields[4], "symmetric" | "general") {
        return Err(parse_err(
            1,
            format!("unsupported symmetry {:?}", fields[4]),
        ));
    }

    // Size line: first non-comment line after the header.
    let mut n_hint = 0usize;
    let mut declared = 0usize;
    let mut saw_size = false;
    let mut edges = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        if !saw_size {
            let rows = parse_id(
                tokens
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing rows"))?,
                lineno,
            )?;
            let cols = parse_id(
                tokens
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing cols"))?,
                lineno,
            )?;
            declared = parse_id(
                tokens
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing entry count"))?,
                lineno,
            )?;
            n_hint = rows.max(cols);
            saw_size = true;
            continue;
        }
        let r = parse_id(
            tokens
                .next()
                .ok_or_else(|| parse_err(lineno, "missing row id"))?,
            lineno,
        )?;
        let c = parse_id(
            tokens
                .next()
                .ok_or_else(|| parse_err(lineno, "missing col id"))?,
            lineno,
        )?;
        if r == 0 || c == 0 {
            return Err(parse_err(lineno, "matrix-market ids are 1-based"));
        }
        edges.push((r - 1, c - 1));
    }
    if !saw_size {
        return Err(parse_err(1, "missing size line"));
    }
    if edges.len() != declared {
        return Err(parse_err(
            0,
            format!(
                "size line declared {declared} entries, file has {}",
                edges.len()
            ),
        ));
    }
    Ok(RawEdgeList { n_hint, edges })
}

/// Writes pairs as edge-list text, one "u v" per line.
pub fn write_edge_list(path: &Path, edges: &[(usize, usize)]) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for &(u, v) in edges {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()
}
