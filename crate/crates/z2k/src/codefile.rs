//! The `z2k-code v1` text format.
//!
//! ```text
//! # z2k-code v1
//! # free comment lines
//! modulus: 8
//! length: 4
//! rows: 2
//! 1 0 3 5
//! 0 1 5 3
//! ```

use std::fmt::Write as _;
use std::path::Path;

use z2k_core::{GeneratorMatrix, Modulus, ZVector};

pub const MAGIC: &str = "# z2k-code v1";

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    At { line: usize, column: usize, message: String },
    #[error("missing header field `{0}`")]
    MissingField(&'static str),
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("{0}")]
    Code(#[from] z2k_core::Error),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

fn at(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::At { line, column, message: message.into() }
}

/// A parsed file: the matrix plus its comment lines, without the leading `# `.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFile {
    pub comments: Vec<String>,
    pub matrix: GeneratorMatrix,
}

pub fn parse_code_file(text: &str) -> Result<CodeFile, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, l)) if l.trim_end() == MAGIC => {}
        Some((n, _)) => return Err(at(n, 1, format!("expected `{MAGIC}`"))),
        None => return Err(at(1, 1, "empty file")),
    }
    let mut comments = Vec::new();
    let (mut modulus, mut length, mut rows) = (None, None, None);
    let mut body = Vec::new();
    for (n, line) in lines {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(c) = trimmed.strip_prefix('#') {
            if body.is_empty() {
                comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            }
            continue;
        }
        if let Some((key, value)) = trimmed.split_once(':') {
            if !body.is_empty() {
                return Err(at(n, 1, "header field after matrix rows"));
            }
            let col = line.find(value.trim()).map_or(1, |c| c + 1);
            let parsed: usize = value.trim().parse().map_err(|_| at(n, col, format!("`{}` is not a number", value.trim())))?;
            let slot = match key.trim() {
                "modulus" => &mut modulus,
                "length" => &mut length,
                "rows" => &mut rows,
                other => return Err(at(n, 1, format!("unknown header key `{other}`"))),
            };
            if slot.replace(parsed).is_some() {
                return Err(at(n, 1, format!("duplicate header key `{}`", key.trim())));
            }
            continue;
        }
        body.push((n, line));
    }
    let q = modulus.ok_or(ParseError::MissingField("modulus"))?;
    let len = length.ok_or(ParseError::MissingField("length"))?;
    let expected = rows.ok_or(ParseError::MissingField("rows"))?;
    let modulus = Modulus::new(u32::try_from(q).map_err(|_| z2k_core::Error::InvalidModulus(u32::MAX))?)?;
    if body.len() != expected {
        return Err(ParseError::RowCount { expected, found: body.len() });
    }
    let mut out = Vec::with_capacity(expected);
    for (n, line) in body {
        let mut coords = Vec::with_capacity(len);
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let end = rest[start..].find(char::is_whitespace).map_or(rest.len(), |e| start + e);
            let token = &rest[start..end];
            let column = offset + start + 1;
            let digit: u64 = token.parse().map_err(|_| at(n, column, format!("`{token}` is not a digit")))?;
            if digit >= q as u64 {
                return Err(at(n, column, format!("digit {digit} out of range for modulus {q}")));
            }
            coords.push(digit as i64);
            offset += end;
            rest = &rest[end..];
        }
        if coords.len() != len {
            return Err(at(n, 1, format!("row has {} entries, expected {len}", coords.len())));
        }
        out.push(ZVector::new(modulus, coords)?);
    }
    Ok(CodeFile { comments, matrix: GeneratorMatrix::new(modulus, len, out)? })
}

pub fn serialize_code_file(file: &CodeFile) -> String {
    let g = &file.matrix;
    let mut s = String::new();
    s.push_str(MAGIC);
    s.push('\n');
    for c in &file.comments {
        let _ = writeln!(s, "# {c}");
    }
    let _ = writeln!(s, "modulus: {}", g.modulus().two_k());
    let _ = writeln!(s, "length: {}", g.len());
    let _ = writeln!(s, "rows: {}", g.rows().len());
    for r in g.rows() {
        let digits: Vec<String> = r.coords().iter().map(u8::to_string).collect();
        s.push_str(&digits.join(" "));
        s.push('\n');
    }
    s
}

pub fn read_code_file(path: &Path) -> Result<CodeFile, ParseError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_code_file(&text)
}

pub fn write_code_file(path: &Path, file: &CodeFile) -> Result<(), ParseError> {
    std::fs::write(path, serialize_code_file(file))
        .map_err(|e| ParseError::Io { path: path.display().to_string(), message: e.to_string() })
}
