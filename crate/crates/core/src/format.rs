//! The line-oriented certificate file format.
//!
//! ```text
//! # optional comment lines, only before the header
//! H 4 1 8
//! 0010
//! 0111
//! ...
//! ```
//!
//! The header is `<TAG> <n> <k> <len>` followed by exactly `len` lines of
//! `n`-character bitstrings, each newline-terminated. Tags: `H` (bipartite
//! Kneser), `K` (Kneser), `Q` (two cube levels), `MID` (middle-levels base
//! cycle). Lemma structure dumps start with `LEMMA` and have their own layout,
//! see [`crate::lemma::LemmaStructure::to_dump`].

use std::fmt;
use std::str::FromStr;

use crate::bitcore::{GraphKind, Vertex, MAX_N};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    H,
    K,
    Q,
    Mid,
    Lemma,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::H => "H",
            Tag::K => "K",
            Tag::Q => "Q",
            Tag::Mid => "MID",
            Tag::Lemma => "LEMMA",
        })
    }
}

impl FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "H" => Tag::H,
            "K" => Tag::K,
            "Q" => Tag::Q,
            "MID" => Tag::Mid,
            "LEMMA" => Tag::Lemma,
            other => return Err(Error::invalid(format!("unknown tag {other:?}"))),
        })
    }
}

impl Tag {
    /// The graph a certificate with this tag lives on.
    pub fn graph(self, n: usize, k: usize) -> Result<GraphKind> {
        match self {
            Tag::H => GraphKind::bip_kneser(n, k),
            Tag::K => GraphKind::kneser(n, k),
            Tag::Q => GraphKind::cube_levels(n, k),
            Tag::Mid => {
                if k == 0 || n != 2 * k + 1 {
                    return Err(Error::invalid(format!(
                        "MID needs n = 2k+1, got n={n} k={k}"
                    )));
                }
                GraphKind::cube_levels(n, k)
            }
            Tag::Lemma => Err(Error::invalid("LEMMA dumps are not cycle certificates")),
        }
    }

    pub fn for_graph(g: &GraphKind) -> Option<Tag> {
        match g {
            GraphKind::BipKneser { .. } => Some(Tag::H),
            GraphKind::Kneser { .. } => Some(Tag::K),
            GraphKind::CubeLevels { .. } => Some(Tag::Q),
            GraphKind::Cube { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateFile {
    pub tag: Tag,
    pub n: usize,
    pub k: usize,
    pub body: Vec<Vertex>,
}

/// Splits `text` into lines, tolerating a missing final newline.
pub(crate) fn lines(text: &str) -> Vec<&str> {
    let mut lines: Vec<&str> = text.split('\n').collect();
    if lines.last() == Some(&"") {
        lines.pop();
    }
    lines
}

/// Parses one bitstring line of expected length `n`; `line` is 1-based.
pub(crate) fn parse_vertex_line(raw: &str, n: usize, line: usize) -> Result<Vertex> {
    if raw.len() != n {
        return Err(Error::parse(line, "bad length"));
    }
    if !raw.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::parse(line, "bad symbol"));
    }
    raw.parse().map_err(|_| Error::parse(line, "bad vertex"))
}

pub(crate) fn parse_usize(tok: &str, what: &str, line: usize) -> Result<usize> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(line, format!("bad {what} {tok:?}")));
    }
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} {tok:?}")))
}

/// Index of the header line, skipping leading `#` comments.
pub(crate) fn header_index(lines: &[&str]) -> Result<usize> {
    lines
        .iter()
        .position(|l| !l.starts_with('#'))
        .ok_or_else(|| Error::parse(lines.len() + 1, "missing header"))
}

impl CertificateFile {
    pub fn new(tag: Tag, n: usize, k: usize, body: Vec<Vertex>) -> Self {
        CertificateFile { tag, n, k, body }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines = lines(text);
        let h = header_index(&lines)?;
        let header_line = h + 1;
        let toks: Vec<&str> = lines[h].split(' ').collect();
        let tag: Tag = toks[0]
            .parse()
            .map_err(|_| Error::parse(header_line, format!("unknown tag {:?}", toks[0])))?;
        if tag == Tag::Lemma {
            return Err(Error::parse(
                header_line,
                "LEMMA dump, not a cycle certificate",
            ));
        }
        if toks.len() != 4 {
            return Err(Error::parse(
                header_line,
                "header must be `<TAG> <n> <k> <len>`",
            ));
        }
        let n = parse_usize(toks[1], "n", header_line)?;
        let k = parse_usize(toks[2], "k", header_line)?;
        let len = parse_usize(toks[3], "length", header_line)?;
        if n == 0 || n > MAX_N {
            return Err(Error::parse(
                header_line,
                format!("n={n} outside 1..={MAX_N}"),
            ));
        }
        tag.graph(n, k)
            .map_err(|e| Error::parse(header_line, e.to_string()))?;

        let body_lines = &lines[h + 1..];
        let mut body = Vec::with_capacity(body_lines.len());
        for (i, raw) in body_lines.iter().enumerate() {
            body.push(parse_vertex_line(raw, n, header_line + 1 + i)?);
        }
        if body.len() != len {
            return Err(Error::parse(
                header_line,
                format!(
                    "declared length {len} but found {} vertex lines",
                    body.len()
                ),
            ));
        }
        Ok(CertificateFile { tag, n, k, body })
    }

    pub fn graph(&self) -> Result<GraphKind> {
        self.tag.graph(self.n, self.k)
    }

    pub fn render(&self) -> String {
        let mut out = String::with_capacity((self.n + 1) * (self.body.len() + 1));
        out.push_str(&format!(
            "{} {} {} {}\n",
            self.tag,
            self.n,
            self.k,
            self.body.len()
        ));
        for v in &self.body {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    /// One `{i1,i2,...}` line per vertex, no header.
    pub fn render_sets(&self) -> String {
        let mut out = String::new();
        for v in &self.body {
            out.push_str(&v.subset_string());
            out.push('\n');
        }
        out
    }
}
