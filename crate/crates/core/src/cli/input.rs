//! Plain-text matrix and point-set files: one row per line, whitespace
//! separated decimals, `#` starts a comment.

use std::fmt;
use std::path::{Path, PathBuf};

use crate::numerics::{Matrix, SymMatrix, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Matrix,
    Points,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InputDoc {
    pub kind: InputKind,
    pub rows: Vec<Vec<f64>>,
    pub source: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub source: PathBuf,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "{}:{}: {}", self.source.display(), l, self.message),
            None => write!(f, "{}: {}", self.source.display(), self.message),
        }
    }
}

impl std::error::Error for ParseError {}

impl InputDoc {
    fn err(&self, line: Option<usize>, message: impl Into<String>) -> ParseError {
        ParseError {
            source: self.source.clone(),
            line,
            message: message.into(),
        }
    }

    pub fn read(path: &Path, kind: InputKind) -> Result<Self, ParseError> {
        let text = std::fs::read_to_string(path).map_err(|e| ParseError {
            source: path.to_path_buf(),
            line: None,
            message: e.to_string(),
        })?;
        Self::parse(&text, path, kind)
    }

    /// Tokenizes and checks shape; for [`InputKind::Points`] every row must
    /// have three entries, for [`InputKind::Matrix`] the rows must be square.
    pub fn parse(text: &str, source: &Path, kind: InputKind) -> Result<Self, ParseError> {
        let mut doc = InputDoc {
            kind,
            rows: Vec::new(),
            source: source.to_path_buf(),
        };
        let mut width = None;
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for tok in line.split_whitespace() {
                let v: f64 = tok
                    .parse()
                    .map_err(|_| doc.err(Some(k + 1), format!("not a number: {tok:?}")))?;
                if !v.is_finite() {
                    return Err(doc.err(Some(k + 1), format!("non-finite value: {tok}")));
                }
                row.push(v);
            }
            match width {
                None => width = Some(row.len()),
                Some(w) if w != row.len() => {
                    return Err(doc.err(
                        Some(k + 1),
                        format!("row has {} entries, expected {w}", row.len()),
                    ))
                }
                _ => {}
            }
            doc.rows.push(row);
        }
        if doc.rows.is_empty() {
            return Err(doc.err(None, "no data rows"));
        }
        let (n, m) = (doc.rows.len(), doc.rows[0].len());
        match kind {
            InputKind::Points if m != 3 => {
                return Err(doc.err(None, format!("points must have 3 coordinates, found {m}")))
            }
            InputKind::Matrix if n != m => {
                return Err(doc.err(None, format!("matrix is {n}x{m}, not square")))
            }
            _ => {}
        }
        Ok(doc)
    }

    pub fn matrix(&self) -> Matrix<f64> {
        Matrix::from_rows(&self.rows).expect("rows checked rectangular at parse")
    }

    /// The symmetric matrix, rejecting asymmetry beyond `eps_orth` relative
    /// to the largest entry.
    pub fn symmetric(&self, eps_orth: f64) -> Result<SymMatrix<f64>, ParseError> {
        SymMatrix::from_matrix(&self.matrix(), eps_orth).map_err(|e| self.err(None, e.to_string()))
    }

    pub fn points(&self) -> Vec<Vec3<f64>> {
        self.rows.iter().map(|r| [r[0], r[1], r[2]]).collect()
    }
}
