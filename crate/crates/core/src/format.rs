//! Line-oriented text formats.
//!
//! ```text
//! lg 2            ug 2            cd a b a b
//! v a 0 +         v x             label a 1 -
//! v b 1 -         v y
//! e a b           loop x
//!                 e x y
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Serialization is
//! normalized (vertices in order, loops after vertices, edges sorted) so that
//! equal values serialize to equal bytes.

use std::fmt::Write as _;

use thiserror::Error;

use crate::chord::ChordDiagram;
use crate::graph::{Label, LabeledGraph, LoopedGraph, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Labeled(LabeledGraph),
    Looped(LoopedGraph),
    Chord(ChordDiagram),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Labeled(_) => "labeled-graph",
            Document::Looped(_) => "looped-graph",
            Document::Chord(_) => "chord-diagram",
        }
    }
}

struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

impl Line<'_> {
    fn err(&self, k: usize, message: impl Into<String>) -> ParseError {
        let column = self.tokens.get(k).or(self.tokens.last()).map_or(1, |t| t.0);
        ParseError { line: self.number, column, message: message.into() }
    }

    fn expect_len(&self, k: usize) -> Result<(), ParseError> {
        if self.tokens.len() == k {
            Ok(())
        } else {
            Err(self.err(k.min(self.tokens.len()), format!("expected {} fields, found {}", k, self.tokens.len())))
        }
    }

    fn tok(&self, k: usize) -> &str {
        self.tokens[k].1
    }
}

/// Non-empty lines with 1-based columns of each token, comments removed.
fn lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, c) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push((body[..s].chars().count() + 1, &body[s..pos]));
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push(Line { number: i + 1, tokens });
        }
    }
    out
}

fn parse_framing(line: &Line, k: usize) -> Result<bool, ParseError> {
    match line.tok(k) {
        "0" => Ok(false),
        "1" => Ok(true),
        t => Err(line.err(k, format!("bad label: framing must be 0 or 1, got `{t}`"))),
    }
}

fn parse_sign(line: &Line, k: usize) -> Result<Sign, ParseError> {
    Sign::from_symbol(line.tok(k)).ok_or_else(|| line.err(k, format!("bad label: sign must be + or -, got `{}`", line.tok(k))))
}

fn parse_count(line: &Line) -> Result<usize, ParseError> {
    line.expect_len(2)?;
    line.tok(1).parse().map_err(|_| line.err(1, format!("expected a vertex count, got `{}`", line.tok(1))))
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let lines = lines(text);
    let Some(head) = lines.first() else {
        return Err(ParseError { line: 1, column: 1, message: "empty document".into() });
    };
    match head.tok(0) {
        "lg" => parse_labeled(&lines).map(Document::Labeled),
        "ug" => parse_looped(&lines).map(Document::Looped),
        "cd" => parse_chord(&lines).map(Document::Chord),
        other => Err(head.err(0, format!("unknown header `{other}`, expected lg, ug or cd"))),
    }
}

fn add_edges<L: crate::VertexLabel>(g: &mut crate::Graph<L>, line: &Line) -> Result<(), ParseError> {
    line.expect_len(3)?;
    let a = g.index_of(line.tok(1)).map_err(|e| line.err(1, e.to_string()))?;
    let b = g.index_of(line.tok(2)).map_err(|e| line.err(2, e.to_string()))?;
    if a == b {
        return Err(line.err(2, "self-loop edge; use a loop line or a framing"));
    }
    if g.adjacent(a, b) {
        return Err(line.err(2, "duplicate edge"));
    }
    g.set_edge(a, b, true);
    Ok(())
}

fn check_count(declared: usize, found: usize, head: &Line) -> Result<(), ParseError> {
    if declared == found {
        Ok(())
    } else {
        Err(head.err(1, format!("header declares {declared} vertices, found {found}")))
    }
}

fn parse_labeled(lines: &[Line]) -> Result<LabeledGraph, ParseError> {
    let declared = parse_count(&lines[0])?;
    let mut g = LabeledGraph::new();
    for line in &lines[1..] {
        match line.tok(0) {
            "v" => {
                line.expect_len(4)?;
                let label = Label::new(parse_framing(line, 2)?, parse_sign(line, 3)?);
                g.add_vertex(line.tok(1), label).map_err(|e| line.err(1, e.to_string()))?;
            }
            "e" => add_edges(&mut g, line)?,
            other => return Err(line.err(0, format!("unexpected `{other}` in a labeled graph"))),
        }
    }
    check_count(declared, g.len(), &lines[0])?;
    Ok(g)
}

fn parse_looped(lines: &[Line]) -> Result<LoopedGraph, ParseError> {
    let declared = parse_count(&lines[0])?;
    let mut g = LoopedGraph::new();
    for line in &lines[1..] {
        match line.tok(0) {
            "v" => {
                line.expect_len(2)?;
                g.add_vertex(line.tok(1), false).map_err(|e| line.err(1, e.to_string()))?;
            }
            "loop" => {
                line.expect_len(2)?;
                let i = g.index_of(line.tok(1)).map_err(|e| line.err(1, e.to_string()))?;
                if g.is_looped(i) {
                    return Err(line.err(1, "duplicate loop"));
                }
                g.set_label(i, true);
            }
            "e" => add_edges(&mut g, line)?,
            other => return Err(line.err(0, format!("unexpected `{other}` in a looped graph"))),
        }
    }
    check_count(declared, g.len(), &lines[0])?;
    Ok(g)
}

fn parse_chord(lines: &[Line]) -> Result<ChordDiagram, ParseError> {
    let head = &lines[0];
    let tokens: Vec<&str> = head.tokens[1..].iter().map(|t| t.1).collect();
    let mut d = ChordDiagram::from_word(&tokens).map_err(|e| head.err(1, e.to_string()))?;
    let mut labeled = Vec::new();
    for line in &lines[1..] {
        match line.tok(0) {
            "label" => {
                line.expect_len(4)?;
                let name = line.tok(1);
                if labeled.contains(&name) {
                    return Err(line.err(1, format!("duplicate label for `{name}`")));
                }
                let label = Label::new(parse_framing(line, 2)?, parse_sign(line, 3)?);
                d.set_label(name, label).map_err(|e| line.err(1, e.to_string()))?;
                labeled.push(name);
            }
            other => return Err(line.err(0, format!("unexpected `{other}` in a chord diagram"))),
        }
    }
    Ok(d)
}

pub fn write_labeled(g: &LabeledGraph) -> String {
    let mut s = format!("lg {}\n", g.len());
    for i in 0..g.len() {
        let l = g.label(i);
        let _ = writeln!(s, "v {} {} {}", g.name(i), l.framing as u8, l.sign.symbol());
    }
    for (i, j) in g.edges() {
        let _ = writeln!(s, "e {} {}", g.name(i), g.name(j));
    }
    s
}

pub fn write_looped(l: &LoopedGraph) -> String {
    let mut s = format!("ug {}\n", l.len());
    for i in 0..l.len() {
        let _ = writeln!(s, "v {}", l.name(i));
    }
    for i in (0..l.len()).filter(|&i| l.is_looped(i)) {
        let _ = writeln!(s, "loop {}", l.name(i));
    }
    for (i, j) in l.edges() {
        let _ = writeln!(s, "e {} {}", l.name(i), l.name(j));
    }
    s
}

pub fn write_chord(d: &ChordDiagram) -> String {
    let mut s = String::from("cd");
    for t in d.tokens() {
        s.push(' ');
        s.push_str(t);
    }
    s.push('\n');
    for (name, label) in d.names().iter().zip(d.labels()) {
        if *label != Label::default() {
            let _ = writeln!(s, "label {} {} {}", name, label.framing as u8, label.sign.symbol());
        }
    }
    s
}

pub fn serialize(doc: &Document) -> String {
    match doc {
        Document::Labeled(g) => write_labeled(g),
        Document::Looped(l) => write_looped(l),
        Document::Chord(d) => write_chord(d),
    }
}

/// Value of a `# key value` comment line, if present.
pub fn directive<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|line| {
        let rest = line.trim_start().strip_prefix('#')?.trim();
        let (k, v) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        (k == key).then(|| v.trim())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let Document::Labeled(g) = parse_document("lg 1\nv a 0 +").unwrap() else { panic!() };
        assert_eq!(g.label(0), Label::new(false, Sign::Plus));

        let err = parse_document("ug 2\nloop x\ne x y").unwrap_err();
        assert_eq!((err.line, err.column), (2, 6));
        let Document::Looped(l) = parse_document("ug 2\nv x\nv y\nloop x\ne x y").unwrap() else { panic!() };
        assert!(l.is_looped(0) && !l.is_looped(1));
        assert_eq!(l.edges(), vec![(0, 1)]);

        let Document::Chord(d) = parse_document("cd a b a b").unwrap() else { panic!() };
        assert_eq!(d.labels(), &[Label::default(); 2]);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let cases = [
            ("", 1, 1),
            ("xx 1", 1, 1),
            ("lg 2\nv a 0 +", 1, 4),
            ("lg 1\nv a 2 +", 2, 5),
            ("lg 1\nv a 0 *", 2, 7),
            ("lg 2\nv a 0 +\nv a 1 -", 3, 3),
            ("ug 1\nv a\ne a a", 3, 5),
            ("ug 2\nv a\nv b\ne a b\ne b a", 5, 5),
            ("cd a b a", 1, 4),
            ("cd a a\nlabel b 0 +", 2, 7),
            ("lg 1\n  v a 0 + extra", 2, 11),
        ];
        for (text, line, column) in cases {
            let e = parse_document(text).unwrap_err();
            assert_eq!((e.line, e.column), (line, column), "{text:?}: {e}");
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# a graph\nlg 2   # two vertices\n\nv a 0 +\nv b 1 -\ne b a # edge\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(serialize(&doc), "lg 2\nv a 0 +\nv b 1 -\ne a b\n");
    }

    #[test]
    fn serialization_is_normalized() {
        let text = "ug 3\nv z\nv y\nv x\ne x z\nloop x\ne y z\n";
        let out = serialize(&parse_document(text).unwrap());
        assert_eq!(out, "ug 3\nv z\nv y\nv x\nloop x\ne z y\ne z x\n");
        assert_eq!(serialize(&parse_document(&out).unwrap()), out);

        let out = serialize(&parse_document("cd p q p q\nlabel q 1 -\nlabel p 0 +").unwrap());
        assert_eq!(out, "cd p q p q\nlabel q 1 -\n");
    }

    #[test]
    fn directives_are_read_from_comments() {
        assert_eq!(directive("ug 1\n# seed-diagonal 101\nv a", "seed-diagonal"), Some("101"));
        assert_eq!(directive("ug 1\nv a", "seed-diagonal"), None);
    }
}
