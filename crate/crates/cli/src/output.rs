use std::fmt::Write as _;

use mfxyz::{Error, PolyMatrix, ScalarField, Word};
use serde_json::{json, Value};

/// Result of one command: a JSON value, its text rendering, and the exit
/// code (1 when a check it ran failed).
#[derive(Clone, Debug)]
pub struct Output {
    pub json: Value,
    pub text: String,
    pub code: u8,
}

impl Output {
    pub fn new(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            code: 0,
        }
    }

    pub fn checked(json: Value, text: String, ok: bool) -> Self {
        Output {
            json,
            text,
            code: u8::from(!ok),
        }
    }

    pub fn exit_code(&self) -> u8 {
        self.code
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: exit 2.
    Usage(String),
    /// Domain failure from the library: exit 3.
    Domain(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({ "error": { "code": "MalformedInput", "message": m } }),
            CliError::Domain(e) => {
                json!({ "error": { "code": e.code(), "message": e.to_string() } })
            }
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "malformed input: {m}"),
            CliError::Domain(e) => write!(f, "{}: {e}", e.code()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(m) => CliError::Usage(m),
            other => CliError::Domain(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Words given as `3,-2,2`, `(3,-2,2)` or a JSON array.
pub fn parse_word(s: &str) -> CliResult<Word> {
    let t = s.trim();
    let entries: Vec<i32> = if t.starts_with('[') {
        serde_json::from_str(t).map_err(|e| CliError::Usage(format!("word `{s}`: {e}")))?
    } else {
        t.trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i32>()
                    .map_err(|_| CliError::Usage(format!("word `{s}`: bad entry `{x}`")))
            })
            .collect::<CliResult<_>>()?
    };
    Ok(Word::new(entries)?)
}

pub fn matrix_text<F: ScalarField>(m: &PolyMatrix<F>) -> String {
    if m.rows() == 0 {
        return "[]\n".into();
    }
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|e| e.to_string()).collect())
        .collect();
    text_grid(&cells)
}

pub fn text_grid(cells: &[Vec<String>]) -> String {
    let cols = cells.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|j| {
            cells
                .iter()
                .map(|r| r[j].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        let _ = writeln!(out, "[ {} ]", line.join("  "));
    }
    out
}
