//! Colouring text files and Graphviz export.
//!
//! ```text
//! # optional comment lines, anywhere
//! q k l n
//! <word 1>
//! ...
//! <word n>
//! ```
//!
//! Header fields are decimal; each word is `k` symbols from `0-9a-z`, so at
//! most 36 colours. Every line ends with `\n`. A comment line `# mode=walks`
//! marks an identification-only file: words may repeat their own windows.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::necklace::NecklaceGraph;
use crate::words::{parse_symbol, Colouring, CyclicWord, ValidityReport};

pub const MAX_FILE_ALPHABET: usize = 36;
pub const WALKS_MARKER: &str = "# mode=walks";
/// Largest dB(q, l) written as DOT.
pub const MAX_DOT_VERTICES: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Line {
    Comment(String),
    Header(String),
    Word(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouringFile {
    pub q: usize,
    pub k: usize,
    pub l: usize,
    words: Vec<CyclicWord>,
    lines: Vec<Line>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

impl ColouringFile {
    pub fn parse(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(parse_err(1, "empty file"));
        }
        if !text.ends_with('\n') {
            let last = text.lines().count();
            return Err(parse_err(last, "missing trailing newline"));
        }
        let mut lines = Vec::new();
        let mut header: Option<(usize, usize, usize, usize)> = None;
        let mut words = Vec::new();
        for (i, raw) in text[..text.len() - 1].split('\n').enumerate() {
            let no = i + 1;
            if raw.starts_with('#') {
                lines.push(Line::Comment(raw.to_string()));
                continue;
            }
            let Some((q, k, _, n)) = header else {
                let fields: Vec<&str> = raw.split(' ').collect();
                if fields.len() != 4 {
                    return Err(parse_err(no, "header must be `q k l n`"));
                }
                let mut vals = [0usize; 4];
                for (v, f) in vals.iter_mut().zip(&fields) {
                    if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(parse_err(no, format!("bad header field {f:?}")));
                    }
                    *v = f.parse().map_err(|_| parse_err(no, format!("bad header field {f:?}")))?;
                }
                let [q, k, l, n] = vals;
                if !(1..=MAX_FILE_ALPHABET).contains(&q) {
                    return Err(parse_err(no, format!("q = {q} outside 1..=36")));
                }
                if l == 0 || l > k {
                    return Err(parse_err(no, format!("need 1 <= l <= k, got l = {l}, k = {k}")));
                }
                header = Some((q, k, l, n));
                lines.push(Line::Header(raw.to_string()));
                continue;
            };
            if words.len() == n {
                return Err(parse_err(no, format!("more than {n} words")));
            }
            let symbols = raw
                .chars()
                .map(|c| match parse_symbol(c) {
                    Some(s) if (s as usize) < q => Ok(s),
                    _ => Err(parse_err(no, format!("symbol {c:?} not in the alphabet of size {q}"))),
                })
                .collect::<Result<Vec<u8>>>()?;
            if symbols.len() != k {
                return Err(parse_err(no, format!("word has length {}, expected {k}", symbols.len())));
            }
            lines.push(Line::Word(words.len()));
            words.push(CyclicWord::new(symbols));
        }
        let Some((q, k, l, n)) = header else {
            return Err(parse_err(lines.len().max(1), "missing header"));
        };
        if words.len() != n {
            return Err(parse_err(lines.len(), format!("expected {n} words, found {}", words.len())));
        }
        Ok(ColouringFile { q, k, l, words, lines })
    }

    /// A fresh file: comment lines first, then header and words.
    pub fn from_colouring(c: &Colouring, comments: &[String], walks: bool) -> Result<Self> {
        if c.q() > MAX_FILE_ALPHABET {
            return Err(Error::TooLarge(format!("{} colours do not fit the 0-9a-z alphabet", c.q())));
        }
        let mut lines: Vec<Line> = Vec::new();
        if walks {
            lines.push(Line::Comment(WALKS_MARKER.to_string()));
        }
        for comment in comments {
            for part in comment.lines() {
                lines.push(Line::Comment(format!("# {part}").trim_end().to_string()));
            }
        }
        lines.push(Line::Header(format!("{} {} {} {}", c.q(), c.k(), c.l(), c.n())));
        lines.extend((0..c.n()).map(Line::Word));
        Ok(ColouringFile {
            q: c.q(),
            k: c.k(),
            l: c.l(),
            words: c.words().to_vec(),
            lines,
        })
    }

    pub fn n(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[CyclicWord] {
        &self.words
    }

    pub fn comments(&self) -> Vec<&str> {
        self.lines
            .iter()
            .filter_map(|l| match l {
                Line::Comment(c) => Some(c.as_str()),
                _ => None,
            })
            .collect()
    }

    pub fn is_walks(&self) -> bool {
        self.comments().iter().any(|c| c.trim_end() == WALKS_MARKER)
    }

    pub fn colouring(&self) -> Result<Colouring> {
        Colouring::new(self.q, self.k, self.l, self.words.clone())
    }

    /// Validity under the file's semantics (identification-only for walks).
    pub fn verify(&self) -> Result<ValidityReport> {
        let c = self.colouring()?;
        Ok(if self.is_walks() { c.check_identification() } else { c.is_valid() })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            match line {
                Line::Comment(s) | Line::Header(s) => out.push_str(s),
                Line::Word(i) => out.push_str(&self.words[*i].to_string()),
            }
            out.push('\n');
        }
        out
    }
}

impl std::str::FromStr for ColouringFile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ColouringFile::parse(s)
    }
}

fn label(symbols: &[u8]) -> String {
    CyclicWord::new(symbols.to_vec()).to_string()
}

/// dB(q, l) as a DOT digraph; vertices are labelled by their words.
pub fn debruijn_dot(q: usize, l: usize) -> Result<String> {
    if q == 0 || q > MAX_FILE_ALPHABET || l == 0 {
        return Err(Error::InvalidInput(format!("need 1 <= q <= 36 and l >= 1, got q={q}, l={l}")));
    }
    let v = crate::arith::checked_pow(q as u64, l as u32)
        .filter(|&v| v <= MAX_DOT_VERTICES)
        .ok_or_else(|| Error::TooLarge(format!("{q}^{l} vertices")))? as usize;
    let word = |mut x: usize| {
        let mut s = vec![0u8; l];
        for slot in s.iter_mut().rev() {
            *slot = (x % q) as u8;
            x /= q;
        }
        label(&s)
    };
    let mut out = format!("digraph \"dB({q},{l})\" {{\n");
    for x in 0..v {
        let _ = writeln!(out, "  \"{}\";", word(x));
    }
    for x in 0..v {
        let base = (x % (v / q)) * q;
        for y in base..base + q {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", word(x), word(y));
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// The necklace adjacency graph as an undirected DOT graph.
pub fn necklace_dot(g: &NecklaceGraph) -> String {
    let name = if g.aperiodic_only { "N'" } else { "N" };
    let mut out = format!("graph \"{name}({},{})\" {{\n", g.q, g.l);
    for v in &g.vertices {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for &(a, b) in &g.edges {
        let _ = writeln!(out, "  \"{}\" -- \"{}\";", g.vertices[a], g.vertices[b]);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::necklace::necklace_graph;

    const SAMPLE: &str = "# made by hand\n2 8 5 4\n10111110\n# between words\n01000001\n00110110\n00111001\n";

    #[test]
    fn round_trip_keeps_comments() {
        let f = ColouringFile::parse(SAMPLE).unwrap();
        assert_eq!((f.q, f.k, f.l, f.n()), (2, 8, 5, 4));
        assert_eq!(f.to_text(), SAMPLE);
        assert!(!f.is_walks());
        assert!(f.verify().unwrap().valid);
    }

    #[test]
    fn malformed_inputs() {
        let cases = [
            ("", 1),
            ("2 8 5 1\n10111110", 2),
            ("2 8 5\n10111110\n", 1),
            ("2 8 5 1\n1011111\n", 2),
            ("2 8 5 1\n10121110\n", 2),
            ("2 8 5 2\n10111110\n", 2),
            ("2 8 5 1\n10111110\n10111110\n", 3),
            ("37 8 5 1\n10111110\n", 1),
            ("2 8 x 1\n10111110\n", 1),
            ("2 4 5 0\n", 1),
        ];
        for (text, line) in cases {
            match ColouringFile::parse(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?} parsed as {other:?}"),
            }
        }
    }

    #[test]
    fn walks_marker() {
        let c = crate::necklace::closed_walks(2, 6, 3).unwrap();
        let f = ColouringFile::from_colouring(&c, &["closed walks".to_string()], true).unwrap();
        let text = f.to_text();
        assert!(text.starts_with("# mode=walks\n# closed walks\n2 6 3 4\n"));
        let back = ColouringFile::parse(&text).unwrap();
        assert!(back.is_walks());
        assert!(back.verify().unwrap().valid);
        assert!(!back.colouring().unwrap().is_valid().valid);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn letters_above_nine() {
        let c = Colouring::new(12, 2, 1, vec![CyclicWord::new(vec![10, 11])]).unwrap();
        let text = ColouringFile::from_colouring(&c, &[], false).unwrap().to_text();
        assert_eq!(text, "12 2 1 1\nab\n");
        let big = Colouring::new(40, 1, 1, vec![]).unwrap();
        assert!(ColouringFile::from_colouring(&big, &[], false).is_err());
    }

    #[test]
    fn dot_output() {
        let dot = debruijn_dot(2, 2).unwrap();
        assert!(dot.contains("\"00\" -> \"00\";"));
        assert!(dot.contains("\"01\" -> \"11\";"));
        assert_eq!(dot.matches("->").count(), 8);
        let g = necklace_graph(2, 3, false).unwrap();
        let dot = necklace_dot(&g);
        assert!(dot.contains("\"001\" -- \"011\";"));
        assert!(debruijn_dot(2, 17).is_err());
    }
}
