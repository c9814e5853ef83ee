//! GloVe-style word-vector tables: loading, lookup, and cosine similarity.
//!
//! The on-disk format is one entry per line, `token v1 v2 ... vd`, separated
//! by single spaces. Files may be gzip-compressed; compression is detected
//! from the magic bytes, not the file name.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use flate2::bufread::GzDecoder;
use thiserror::Error;

/// Errors raised while loading or using an embedding table.
#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("cannot read embedding file {path}: {source}")]
    Unreadable {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("embedding file {path} is empty")]
    EmptyFile { path: String },
    #[error("embedding line {line}: token has no vector components")]
    MissingVector { line: usize },
    #[error("embedding line {line}: expected {expected} components, found {found}")]
    InconsistentDimension {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("embedding line {line}: component {index} is not a finite number: {text:?}")]
    BadComponent {
        line: usize,
        index: usize,
        text: String,
    },
    #[error("expected dimension {expected}, file has dimension {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vectors have different dimensions: {left} vs {right}")]
    CosineDimensionMismatch { left: usize, right: usize },
    #[error("cosine is undefined for a zero-norm vector")]
    ZeroNorm,
}

/// Immutable vocabulary of dense word vectors with a single fixed dimension.
///
/// Vectors live in one contiguous buffer; a token index gives O(1) average
/// lookup. Tokens are case-folded to lowercase on load and on lookup. The
/// table never changes after loading, so shared references are safe to use
/// from any number of threads.
#[derive(Debug, Clone)]
pub struct EmbeddingTable {
    dimension: usize,
    index: HashMap<String, usize>,
    storage: Vec<f64>,
    tokens: Vec<String>,
    source_path: String,
    duplicate_count: usize,
}

impl EmbeddingTable {
    /// Load a table from a GloVe-style text file, transparently handling gzip.
    ///
    /// The dimension is inferred from the first line unless `expected_dim`
    /// pins it. Duplicate tokens keep their first vector and increment the
    /// duplicate-warning counter. Any malformed line is a hard error that
    /// names the line, rather than a silent skip.
    pub fn load(path: &Path, expected_dim: Option<usize>) -> Result<Self, EmbeddingError> {
        let display = path.display().to_string();
        let file = File::open(path).map_err(|source| EmbeddingError::Unreadable {
            path: display.clone(),
            source,
        })?;
        let mut buffered = BufReader::new(file);
        let is_gzip = {
            let head = buffered
                .fill_buf()
                .map_err(|source| EmbeddingError::Unreadable {
                    path: display.clone(),
                    source,
                })?;
            head.len() >= 2 && head[0] == 0x1f && head[1] == 0x8b
        };
        let reader: Box<dyn BufRead> = if is_gzip {
            Box::new(BufReader::new(GzDecoder::new(buffered)))
        } else {
            Box::new(buffered)
        };
        Self::from_reader(reader, &display, expected_dim)
    }

    /// Parse a table from any line-oriented reader. `source` is only used in
    /// error messages and metadata.
    pub fn from_reader(
        reader: impl BufRead,
        source: &str,
        expected_dim: Option<usize>,
    ) -> Result<Self, EmbeddingError> {
        let mut table = EmbeddingTable {
            dimension: 0,
            index: HashMap::new(),
            storage: Vec::new(),
            tokens: Vec::new(),
            source_path: source.to_string(),
            duplicate_count: 0,
        };
        for (i, line) in reader.lines().enumerate() {
            let line = line.map_err(|source| EmbeddingError::Unreadable {
                path: table.source_path.clone(),
                source,
            })?;
            let line_no = i + 1;
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let token = match fields.next() {
                Some(t) => t.to_lowercase(),
                None => continue,
            };
            let mut vector = Vec::with_capacity(table.dimension);
            for (i, field) in fields.enumerate() {
                let value: f64 = field.parse().map_err(|_| EmbeddingError::BadComponent {
                    line: line_no,
                    index: i + 1,
                    text: field.to_string(),
                })?;
                if !value.is_finite() {
                    return Err(EmbeddingError::BadComponent {
                        line: line_no,
                        index: i + 1,
                        text: field.to_string(),
                    });
                }
                vector.push(value);
            }
            if vector.is_empty() {
                return Err(EmbeddingError::MissingVector { line: line_no });
            }
            if table.dimension == 0 {
                if let Some(expected) = expected_dim {
                    if vector.len() != expected {
                        return Err(EmbeddingError::DimensionMismatch {
                            expected,
                            found: vector.len(),
                        });
                    }
                }
                table.dimension = vector.len();
            } else if vector.len() != table.dimension {
                return Err(EmbeddingError::InconsistentDimension {
                    line: line_no,
                    expected: table.dimension,
                    found: vector.len(),
                });
            }
            table.insert(token, vector);
        }
        if table.tokens.is_empty() {
            return Err(EmbeddingError::EmptyFile {
                path: table.source_path,
            });
        }
        Ok(table)
    }

    /// Build a table directly from `(token, vector)` pairs. Duplicates keep
    /// the first vector, matching file loading.
    pub fn from_entries<I, S>(entries: I) -> Result<Self, EmbeddingError>
    where
        I: IntoIterator<Item = (S, Vec<f64>)>,
        S: AsRef<str>,
    {
        let mut table = EmbeddingTable {
            dimension: 0,
            index: HashMap::new(),
            storage: Vec::new(),
            tokens: Vec::new(),
            source_path: "<memory>".to_string(),
            duplicate_count: 0,
        };
        for (i, (token, vector)) in entries.into_iter().enumerate() {
            if vector.is_empty() {
                return Err(EmbeddingError::MissingVector { line: i + 1 });
            }
            if let Some(bad) = vector.iter().position(|v| !v.is_finite()) {
                return Err(EmbeddingError::BadComponent {
                    line: i + 1,
                    index: bad + 1,
                    text: vector[bad].to_string(),
                });
            }
            if table.dimension == 0 {
                table.dimension = vector.len();
            } else if vector.len() != table.dimension {
                return Err(EmbeddingError::InconsistentDimension {
                    line: i + 1,
                    expected: table.dimension,
                    found: vector.len(),
                });
            }
            table.insert(token.as_ref().to_lowercase(), vector);
        }
        if table.tokens.is_empty() {
            return Err(EmbeddingError::EmptyFile {
                path: table.source_path,
            });
        }
        Ok(table)
    }

    fn insert(&mut self, token: String, vector: Vec<f64>) {
        if self.index.contains_key(&token) {
            self.duplicate_count += 1;
            return;
        }
        let row = self.tokens.len();
        self.index.insert(token.clone(), row);
        self.tokens.push(token);
        self.storage.extend_from_slice(&vector);
    }

    /// Case-folding vector lookup; absent tokens yield `None`, never an error.
    pub fn lookup(&self, token: &str) -> Option<&[f64]> {
        let key = token.to_lowercase();
        self.index.get(&key).map(|&row| self.row(row))
    }

    fn row(&self, row: usize) -> &[f64] {
        &self.storage[row * self.dimension..(row + 1) * self.dimension]
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn token_count(&self) -> usize {
        self.tokens.len()
    }

    /// Number of duplicate tokens skipped during load (first occurrence wins).
    pub fn duplicate_count(&self) -> usize {
        self.duplicate_count
    }

    pub fn source_path(&self) -> &str {
        &self.source_path
    }

    /// Tokens in insertion order.
    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(String::as_str)
    }

    /// Write the table back in the text format it was loaded from.
    ///
    /// Components use the shortest decimal form that parses back to the same
    /// f64, so a write/reload round trip preserves vectors bit-for-bit.
    pub fn write_to(&self, out: &mut impl Write) -> io::Result<()> {
        for (row, token) in self.tokens.iter().enumerate() {
            write!(out, "{token}")?;
            for value in self.row(row) {
                write!(out, " {value}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Cosine similarity, clamped to [-1, 1] to absorb rounding.
pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64, EmbeddingError> {
    if u.len() != v.len() {
        return Err(EmbeddingError::CosineDimensionMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let mut dot = 0.0;
    let mut nu = 0.0;
    let mut nv = 0.0;
    for (a, b) in u.iter().zip(v) {
        dot += a * b;
        nu += a * a;
        nv += b * b;
    }
    if nu == 0.0 || nv == 0.0 {
        return Err(EmbeddingError::ZeroNorm);
    }
    Ok((dot / (nu.sqrt() * nv.sqrt())).clamp(-1.0, 1.0))
}
