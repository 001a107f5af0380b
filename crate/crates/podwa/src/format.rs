//! Line-based UTF-8 formats for automata, observed automata and samples,
//! plus edge-list graphs, DIMACS-style formulas and a DOT export.
//!
//! Automaton files look like
//!
//! ```text
//! podwa
//! alphabet: a b c
//! states: q0
//! initial: q0
//! trans: q0 a q0 -1
//! trans: q0 b q0 0
//! trans: q0 c q0 1
//! cuts: 1
//! ```
//!
//! A `dwa` header omits the `cuts` line. `#` starts a comment. Sample files
//! use header `sample` with `entry: <word> <index>` lines, where a word is
//! either a plain concatenation of one-character letters or a `.`-separated
//! letter list.

use std::fmt;

use crate::automaton::{Dwa, Podwa, RawDwa, RawPodwa, RawTransition, Violation};
use crate::fitting::Sample;
use crate::generators::{Cnf, Graph, Lit};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormatError {
    Syntax { line: usize, msg: String },
    Invalid(Vec<Violation>),
    Data(String),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Syntax { line, msg } => write!(f, "line {line}: {msg}"),
            FormatError::Invalid(vs) => {
                write!(f, "invalid automaton:")?;
                for v in vs {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
            FormatError::Data(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for FormatError {}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Dwa(Dwa),
    Podwa(Podwa),
    Sample(Sample),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let stripped = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if stripped.is_empty() {
            None
        } else {
            Some((i + 1, stripped))
        }
    })
}

pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let mut lines = meaningful_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| syntax(0, "empty document"))?;
    match header {
        "podwa" | "dwa" => parse_automaton_body(header == "podwa", hline, lines),
        "sample" => parse_sample_body(hline, lines),
        other => Err(syntax(hline, format!("unknown header `{other}`"))),
    }
}

pub fn parse_podwa(text: &str) -> Result<Podwa, FormatError> {
    match parse_document(text)? {
        Document::Podwa(p) => Ok(p),
        _ => Err(syntax(1, "expected a `podwa` document")),
    }
}

pub fn parse_dwa(text: &str) -> Result<Dwa, FormatError> {
    match parse_document(text)? {
        Document::Dwa(d) => Ok(d),
        Document::Podwa(p) => Ok(p.automaton),
        _ => Err(syntax(1, "expected an automaton document")),
    }
}

pub fn parse_sample(text: &str) -> Result<Sample, FormatError> {
    match parse_document(text)? {
        Document::Sample(s) => Ok(s),
        _ => Err(syntax(1, "expected a `sample` document")),
    }
}

fn parse_automaton_body<'a>(
    observed: bool,
    header_line: usize,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Document, FormatError> {
    let mut alphabet: Option<Vec<String>> = None;
    let mut states: Option<Vec<String>> = None;
    let mut initial: Option<String> = None;
    let mut cuts: Option<Vec<i64>> = None;
    let mut transitions: Vec<RawTransition> = Vec::new();
    let mut seen: Vec<(String, String)> = Vec::new();
    for (ln, line) in lines {
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(ln, "expected `key: value`"))?;
        let fields: Vec<&str> = rest.split_whitespace().collect();
        match key.trim() {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(syntax(ln, "duplicate `alphabet` line"));
                }
                alphabet = Some(fields.iter().map(|s| s.to_string()).collect());
            }
            "states" => {
                if states.is_some() {
                    return Err(syntax(ln, "duplicate `states` line"));
                }
                states = Some(fields.iter().map(|s| s.to_string()).collect());
            }
            "initial" => {
                if initial.is_some() {
                    return Err(syntax(ln, "duplicate `initial` line"));
                }
                if fields.len() != 1 {
                    return Err(syntax(ln, "`initial` takes one state"));
                }
                initial = Some(fields[0].to_string());
            }
            "cuts" => {
                if !observed {
                    return Err(syntax(ln, "`dwa` documents carry no cuts"));
                }
                if cuts.is_some() {
                    return Err(syntax(ln, "duplicate `cuts` line"));
                }
                let parsed: Result<Vec<i64>, _> =
                    fields.iter().map(|s| s.parse::<i64>()).collect();
                cuts = Some(parsed.map_err(|_| syntax(ln, "cuts must be integers"))?);
            }
            "trans" => {
                if fields.len() != 4 {
                    return Err(syntax(ln, "`trans` takes state letter state weight"));
                }
                let weight: i64 = fields[3]
                    .parse()
                    .map_err(|_| syntax(ln, "weight must be an integer"))?;
                let key = (fields[0].to_string(), fields[1].to_string());
                if seen.contains(&key) {
                    return Err(syntax(
                        ln,
                        format!("duplicate transition for ({}, {})", key.0, key.1),
                    ));
                }
                seen.push(key);
                transitions.push(RawTransition {
                    from: fields[0].to_string(),
                    letter: fields[1].to_string(),
                    to: fields[2].to_string(),
                    weight,
                });
            }
            other => return Err(syntax(ln, format!("unknown key `{other}`"))),
        }
    }
    let raw = RawDwa {
        alphabet: alphabet.ok_or_else(|| syntax(header_line, "missing `alphabet` line"))?,
        states: states.ok_or_else(|| syntax(header_line, "missing `states` line"))?,
        initial: initial.ok_or_else(|| syntax(header_line, "missing `initial` line"))?,
        transitions,
    };
    if observed {
        let raw = RawPodwa {
            dwa: raw,
            cuts: cuts.ok_or_else(|| syntax(header_line, "missing `cuts` line"))?,
        };
        Ok(Document::Podwa(raw.build().map_err(FormatError::Invalid)?))
    } else {
        Ok(Document::Dwa(raw.build().map_err(FormatError::Invalid)?))
    }
}

fn parse_sample_body<'a>(
    header_line: usize,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Document, FormatError> {
    let mut alphabet: Option<Vec<String>> = None;
    let mut cuts: Option<Vec<i64>> = None;
    let mut entries: Vec<(usize, String, usize)> = Vec::new();
    for (ln, line) in lines {
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(ln, "expected `key: value`"))?;
        let fields: Vec<&str> = rest.split_whitespace().collect();
        match key.trim() {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(syntax(ln, "duplicate `alphabet` line"));
                }
                alphabet = Some(fields.iter().map(|s| s.to_string()).collect());
            }
            "cuts" => {
                if cuts.is_some() {
                    return Err(syntax(ln, "duplicate `cuts` line"));
                }
                let parsed: Result<Vec<i64>, _> =
                    fields.iter().map(|s| s.parse::<i64>()).collect();
                cuts = Some(parsed.map_err(|_| syntax(ln, "cuts must be integers"))?);
            }
            "entry" => {
                if fields.len() != 2 {
                    return Err(syntax(ln, "`entry` takes word and index"));
                }
                let idx: usize = fields[1]
                    .parse()
                    .map_err(|_| syntax(ln, "index must be a non-negative integer"))?;
                entries.push((ln, fields[0].to_string(), idx));
            }
            other => return Err(syntax(ln, format!("unknown key `{other}`"))),
        }
    }
    let letters = alphabet.ok_or_else(|| syntax(header_line, "missing `alphabet` line"))?;
    let cuts = cuts.ok_or_else(|| syntax(header_line, "missing `cuts` line"))?;
    let alphabet = crate::automaton::Alphabet::new(letters)
        .map_err(|v| FormatError::Invalid(vec![v]))?;
    let scheme = crate::automaton::ObservationScheme::new(cuts)
        .map_err(|v| FormatError::Invalid(vec![v]))?;
    let mut resolved = Vec::with_capacity(entries.len());
    for (ln, word, idx) in entries {
        let w = alphabet
            .parse_word(&word)
            .map_err(|e| syntax(ln, e.to_string()))?;
        resolved.push((w, idx));
    }
    let sample = Sample::new(alphabet, scheme, resolved).map_err(|e| FormatError::Data(e.to_string()))?;
    Ok(Document::Sample(sample))
}

pub fn serialize_dwa(a: &Dwa) -> String {
    let mut out = String::from("dwa\n");
    push_automaton_body(&mut out, a);
    out
}

pub fn serialize_podwa(p: &Podwa) -> String {
    let mut out = String::from("podwa\n");
    push_automaton_body(&mut out, &p.automaton);
    out.push_str("cuts:");
    for c in p.scheme.cuts() {
        out.push_str(&format!(" {c}"));
    }
    out.push('\n');
    out
}

fn push_automaton_body(out: &mut String, a: &Dwa) {
    out.push_str("alphabet:");
    for l in a.alphabet().names() {
        out.push_str(&format!(" {l}"));
    }
    out.push('\n');
    out.push_str("states:");
    for s in a.state_names() {
        out.push_str(&format!(" {s}"));
    }
    out.push('\n');
    out.push_str(&format!("initial: {}\n", a.state_name(a.initial())));
    for s in a.states() {
        for l in a.alphabet().letters() {
            out.push_str(&format!(
                "trans: {} {} {} {}\n",
                a.state_name(s),
                a.alphabet().name(l),
                a.state_name(a.step(s, l)),
                a.weight(s, l)
            ));
        }
    }
}

pub fn serialize_sample(s: &Sample) -> String {
    let mut out = String::from("sample\n");
    out.push_str("alphabet:");
    for l in s.alphabet().names() {
        out.push_str(&format!(" {l}"));
    }
    out.push('\n');
    out.push_str("cuts:");
    for c in s.scheme().cuts() {
        out.push_str(&format!(" {c}"));
    }
    out.push('\n');
    for (w, idx) in s.entries() {
        out.push_str(&format!("entry: {} {}\n", s.alphabet().render_word(w), idx));
    }
    out
}

/// Edge-list graph format: one `edge u v` line per edge.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut edges = Vec::new();
    for (ln, line) in meaningful_lines(text) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["edge", u, v] => edges.push((u.to_string(), v.to_string())),
            _ => return Err(syntax(ln, "expected `edge u v`")),
        }
    }
    Graph::from_edges(edges).map_err(|e| FormatError::Data(e.to_string()))
}

/// DIMACS-style formula: `p cnf <vars> <clauses>` then clause lines of
/// integer literals terminated by 0.
pub fn parse_cnf(text: &str) -> Result<Cnf, FormatError> {
    let mut num_vars: Option<usize> = None;
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    for (ln, line) in meaningful_lines(text) {
        if let Some(rest) = line.strip_prefix('c') {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                continue;
            }
        }
        if let Some(rest) = line.strip_prefix('p') {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() != 3 || fields[0] != "cnf" {
                return Err(syntax(ln, "expected `p cnf <vars> <clauses>`"));
            }
            num_vars = Some(
                fields[1]
                    .parse()
                    .map_err(|_| syntax(ln, "variable count must be a number"))?,
            );
            continue;
        }
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| syntax(ln, format!("bad literal `{tok}`")))?;
            if v == 0 {
                if !current.is_empty() {
                    clauses.push(std::mem::take(&mut current));
                }
            } else {
                current.push(Lit {
                    var: v.unsigned_abs() as usize,
                    positive: v > 0,
                });
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let num_vars = num_vars.ok_or_else(|| syntax(0, "missing `p cnf` header"))?;
    Cnf::new(num_vars, clauses).map_err(|e| FormatError::Data(e.to_string()))
}

/// GraphViz export of the transition structure.
pub fn to_dot(a: &Dwa) -> String {
    let mut out = String::from("digraph dwa {\n  rankdir=LR;\n  __start [shape=point];\n");
    for s in a.states() {
        out.push_str(&format!("  \"{}\" [shape=circle];\n", a.state_name(s)));
    }
    out.push_str(&format!(
        "  __start -> \"{}\";\n",
        a.state_name(a.initial())
    ));
    for s in a.states() {
        for l in a.alphabet().letters() {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}:{}\"];\n",
                a.state_name(s),
                a.state_name(a.step(s, l)),
                a.alphabet().name(l),
                a.weight(s, l)
            ));
        }
    }
    out.push_str("}\n");
    out
}
