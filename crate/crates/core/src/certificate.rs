//! Line-oriented text certificates for colored complete graphs.
//!
//! ```text
//! GRC1 <n> <k> [partial]
//! <colors of pairs (0,1) .. (0,n-1)>
//! <colors of pairs (1,2) .. (1,n-1)>
//! ...
//! # key value
//! ```
//!
//! The body is the row-major upper triangle, one matrix row per line. The
//! reader only cares about the token stream, so any whitespace layout parses.
//! `partial` files may use `0` for an absent pair.

use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{Color, ColoredCompleteGraph, EdgeColoring, GraphError, PartialColoring};

pub const MAGIC: &str = "GRC1";

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("byte {offset}: {kind}")]
    Parse { offset: usize, kind: ParseErrorKind },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header line")]
    MissingHeader,
    #[error("malformed header {0:?}, expected `GRC1 n k [partial]`")]
    BadHeader(String),
    #[error("unsupported format version {0:?}")]
    UnsupportedVersion(String),
    #[error("entry {0:?} is not a color")]
    BadEntry(String),
    #[error("entry {entry:?} outside [1, {k}]")]
    ColorOutOfRange { entry: String, k: Color },
    #[error("absent pair marker `0` in a complete certificate")]
    AbsentInComplete,
    #[error("body truncated: expected {expected} entries, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("body has more than the expected {expected} entries")]
    TrailingEntries { expected: usize },
    #[error("malformed metadata line {0:?}")]
    BadMetadata(String),
}

fn parse_err(offset: usize, kind: ParseErrorKind) -> CertificateError {
    CertificateError::Parse { offset, kind }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateFile {
    pub n: usize,
    pub k: Color,
    pub partial: bool,
    /// Upper-triangular colors in row-major order; 0 only when `partial`.
    pub body: Vec<Color>,
    pub metadata: Vec<(String, String)>,
}

pub fn write_certificate(
    g: &ColoredCompleteGraph,
    metadata: &[(String, String)],
) -> CertificateFile {
    CertificateFile {
        n: g.n(),
        k: g.k(),
        partial: false,
        body: g.edges().map(|(_, _, c)| c).collect(),
        metadata: metadata.to_vec(),
    }
}

pub fn write_partial_certificate(
    g: &PartialColoring,
    metadata: &[(String, String)],
) -> CertificateFile {
    let n = g.n();
    let body = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .map(|(u, v)| g.edge_color(u, v).unwrap_or(0))
        .collect();
    CertificateFile {
        n,
        k: g.k(),
        partial: true,
        body,
        metadata: metadata.to_vec(),
    }
}

pub fn read_certificate(text: &str) -> Result<ColoredCompleteGraph, CertificateError> {
    CertificateFile::parse(text)?.to_graph()
}

impl CertificateFile {
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.body.len() * 2 + 64);
        out.push_str(MAGIC);
        let _ = write!(out, " {} {}", self.n, self.k);
        if self.partial {
            out.push_str(" partial");
        }
        out.push('\n');
        let mut idx = 0;
        for u in 0..self.n.saturating_sub(1) {
            let row = self.n - 1 - u;
            for (j, c) in self.body[idx..idx + row].iter().enumerate() {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{c}");
            }
            out.push('\n');
            idx += row;
        }
        for (key, value) in &self.metadata {
            // metadata is line-oriented: fold any line breaks into spaces
            let value = value.split_whitespace().collect::<Vec<_>>().join(" ");
            let _ = writeln!(out, "# {key} {value}");
        }
        out
    }

    /// Hex SHA-256 of the serialized text; used as a certificate reference.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }

    pub fn metadata_value(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn parse(text: &str) -> Result<Self, CertificateError> {
        let mut lines = LineOffsets::new(text);
        let (header_off, header) = loop {
            match lines.next() {
                None => return Err(parse_err(text.len(), ParseErrorKind::MissingHeader)),
                Some((_, l)) if l.trim().is_empty() => continue,
                Some(x) => break x,
            }
        };
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() < 3 || fields.len() > 4 {
            return Err(parse_err(
                header_off,
                ParseErrorKind::BadHeader(header.to_string()),
            ));
        }
        if fields[0] != MAGIC {
            return Err(parse_err(
                header_off,
                ParseErrorKind::UnsupportedVersion(fields[0].to_string()),
            ));
        }
        let bad_header = || parse_err(header_off, ParseErrorKind::BadHeader(header.to_string()));
        let n: usize = fields[1].parse().map_err(|_| bad_header())?;
        let k: Color = fields[2].parse().map_err(|_| bad_header())?;
        let partial = match fields.get(3) {
            None => false,
            Some(&"partial") => true,
            Some(_) => return Err(bad_header()),
        };
        if n == 0 || k == 0 {
            return Err(bad_header());
        }

        let expected = n * (n - 1) / 2;
        let mut body = Vec::with_capacity(expected);
        let mut metadata = Vec::new();
        for (line_off, line) in lines {
            let trimmed = line.trim_start();
            if let Some(rest) = trimmed.strip_prefix('#') {
                let rest = rest.trim();
                if rest.is_empty() {
                    continue;
                }
                let (key, value) = match rest.split_once(char::is_whitespace) {
                    Some((key, value)) => (key, value.trim()),
                    None => (rest, ""),
                };
                metadata.push((key.to_string(), value.to_string()));
                continue;
            }
            if !metadata.is_empty() && !trimmed.is_empty() {
                return Err(parse_err(
                    line_off,
                    ParseErrorKind::BadMetadata(line.to_string()),
                ));
            }
            for (tok_off, tok) in tokens(line) {
                let offset = line_off + tok_off;
                if body.len() == expected {
                    return Err(parse_err(
                        offset,
                        ParseErrorKind::TrailingEntries { expected },
                    ));
                }
                let c: u32 = tok
                    .parse()
                    .map_err(|_| parse_err(offset, ParseErrorKind::BadEntry(tok.to_string())))?;
                if c == 0 {
                    if !partial {
                        return Err(parse_err(offset, ParseErrorKind::AbsentInComplete));
                    }
                } else if c > k as u32 {
                    return Err(parse_err(
                        offset,
                        ParseErrorKind::ColorOutOfRange {
                            entry: tok.to_string(),
                            k,
                        },
                    ));
                }
                body.push(c as Color);
            }
        }
        if body.len() != expected {
            return Err(parse_err(
                text.len(),
                ParseErrorKind::Truncated {
                    expected,
                    found: body.len(),
                },
            ));
        }
        Ok(Self {
            n,
            k,
            partial,
            body,
            metadata,
        })
    }

    pub fn to_partial(&self) -> Result<PartialColoring, CertificateError> {
        let mut g = PartialColoring::empty(self.n, self.k)?;
        let mut it = self.body.iter();
        for u in 0..self.n {
            for v in u + 1..self.n {
                let c = *it.next().expect("body length checked at parse time");
                g.set_color(u, v, (c != 0).then_some(c))?;
            }
        }
        Ok(g)
    }

    pub fn to_graph(&self) -> Result<ColoredCompleteGraph, CertificateError> {
        if self.partial {
            return Ok(self.to_partial()?.to_complete()?);
        }
        let mut g = ColoredCompleteGraph::new_complete(self.n, self.k, 1)?;
        let mut it = self.body.iter();
        for u in 0..self.n {
            for v in u + 1..self.n {
                g.set_color(u, v, *it.next().expect("body length checked at parse time"))?;
            }
        }
        Ok(g)
    }

    pub fn save(&self, path: &Path) -> Result<(), CertificateError> {
        std::fs::write(path, self.to_text()).map_err(|source| CertificateError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, CertificateError> {
        let text = std::fs::read_to_string(path).map_err(|source| CertificateError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }
}

/// Lines with their starting byte offsets.
struct LineOffsets<'a> {
    rest: &'a str,
    offset: usize,
}

impl<'a> LineOffsets<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            rest: text,
            offset: 0,
        }
    }
}

impl<'a> Iterator for LineOffsets<'a> {
    type Item = (usize, &'a str);

    fn next(&mut self) -> Option<Self::Item> {
        if self.rest.is_empty() {
            return None;
        }
        let start = self.offset;
        let (line, consumed) = match self.rest.find('\n') {
            Some(i) => (&self.rest[..i], i + 1),
            None => (self.rest, self.rest.len()),
        };
        self.rest = &self.rest[consumed..];
        self.offset += consumed;
        Some((start, line.strip_suffix('\r').unwrap_or(line)))
    }
}

fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split(|c: char| c.is_whitespace())
        .scan(0usize, |pos, tok| {
            let start = *pos;
            *pos += tok.len() + 1;
            Some((start, tok))
        })
        .filter(|(_, tok)| !tok.is_empty())
}
