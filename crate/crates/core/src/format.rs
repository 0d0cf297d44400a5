//! Line-oriented text format for labeled graphs.
//!
//! ```text
//! # comment
//! vertex 1 abc
//! vertex 2 "two words"
//! edge 1 2
//! ```
//!
//! Labels containing whitespace, `"` or `\` are written in double quotes,
//! with `\"` and `\\` as the only escapes. Edges may only refer to vertices
//! declared on earlier lines.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::ParseError;
use crate::graph::{AtomicGraph, CondensedGraph, LabeledGraph, Vertex};

fn tokenize(line: &str) -> Result<Vec<String>, String> {
    let mut tokens = Vec::new();
    let mut chars = line.chars().peekable();
    loop {
        while chars.next_if(|c| c.is_whitespace()).is_some() {}
        let Some(&first) = chars.peek() else { break };
        let mut token = String::new();
        if first == '"' {
            chars.next();
            loop {
                match chars.next() {
                    None => return Err("unterminated quoted label".into()),
                    Some('"') => break,
                    Some('\\') => match chars.next() {
                        Some(c @ ('"' | '\\')) => token.push(c),
                        Some(c) => return Err(format!("unknown escape \\{c}")),
                        None => return Err("unterminated quoted label".into()),
                    },
                    Some(c) => token.push(c),
                }
            }
            if chars.peek().is_some_and(|c| !c.is_whitespace()) {
                return Err("quoted label must be followed by whitespace".into());
            }
        } else {
            while let Some(c) = chars.next_if(|c| !c.is_whitespace()) {
                if c == '"' || c == '\\' {
                    return Err(format!("unquoted label contains '{c}'"));
                }
                token.push(c);
            }
        }
        tokens.push(token);
    }
    Ok(tokens)
}

fn parse_id(token: &str) -> Result<u64, String> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid vertex id '{token}'"));
    }
    token
        .parse()
        .map_err(|_| format!("vertex id '{token}' is out of range"))
}

/// Parses a graph file, rejecting the first offending line.
pub fn parse_graph(text: &str) -> Result<LabeledGraph, ParseError> {
    let mut vertices = Vec::new();
    let mut ids = HashSet::new();
    let mut edges = Vec::new();
    let mut seen_edges = HashSet::new();

    for (number, raw) in text.lines().enumerate() {
        let line = number + 1;
        let err = |reason: String| ParseError { line, reason };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens = tokenize(trimmed).map_err(err)?;
        match tokens[0].as_str() {
            "vertex" => {
                let [_, id, label] = tokens.as_slice() else {
                    return Err(err("expected 'vertex <id> <label>'".into()));
                };
                let id = parse_id(id).map_err(err)?;
                if label.is_empty() {
                    return Err(err(format!("vertex {id} has an empty label")));
                }
                if !ids.insert(id) {
                    return Err(err(format!("duplicate vertex id {id}")));
                }
                vertices.push(Vertex {
                    id,
                    label: label.clone(),
                });
            }
            "edge" => {
                let [_, from, to] = tokens.as_slice() else {
                    return Err(err("expected 'edge <from> <to>'".into()));
                };
                let (from, to) = (parse_id(from).map_err(err)?, parse_id(to).map_err(err)?);
                for endpoint in [from, to] {
                    if !ids.contains(&endpoint) {
                        return Err(err(format!("unknown endpoint {endpoint}")));
                    }
                }
                if !seen_edges.insert((from, to)) {
                    return Err(err(format!("duplicate edge {from} {to}")));
                }
                edges.push((from, to));
            }
            other => return Err(err(format!("unknown directive '{other}'"))),
        }
    }

    Ok(LabeledGraph::new(vertices, edges).expect("validated while parsing"))
}

fn needs_quotes(label: &str) -> bool {
    label.is_empty() || label.chars().any(|c| c.is_whitespace() || c == '"' || c == '\\')
}

fn quoted(label: &str) -> String {
    let mut out = String::with_capacity(label.len() + 2);
    out.push('"');
    for c in label.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// A label in file syntax, quoted only when required.
pub fn format_label(label: &str) -> String {
    if needs_quotes(label) {
        quoted(label)
    } else {
        label.to_string()
    }
}

pub fn write_graph(g: &LabeledGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        writeln!(out, "vertex {} {}", v.id, format_label(&v.label)).unwrap();
    }
    for (from, to) in g.edges() {
        writeln!(out, "edge {from} {to}").unwrap();
    }
    out
}

/// Atomic graph with vertex ids `1..=n` in index order.
pub fn write_atomic(g: &AtomicGraph) -> String {
    let mut out = String::new();
    for (v, c) in g.labels().iter().enumerate() {
        writeln!(out, "vertex {} {}", v + 1, format_label(&c.to_string())).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "edge {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Condensed graph: each component prints its sorted label set as a quoted
/// string, followed by `cyclic` when it holds a cycle. Self-loops are listed
/// as edges.
pub fn write_condensed(h: &CondensedGraph) -> String {
    let mut out = String::new();
    for (c, comp) in h.components().iter().enumerate() {
        let set: String = comp.label_set.iter().collect();
        write!(out, "vertex {} {}", c + 1, quoted(&set)).unwrap();
        if comp.is_cyclic {
            out.push_str(" cyclic");
        }
        out.push('\n');
    }
    for (u, v) in h.edges() {
        writeln!(out, "edge {} {}", u + 1, v + 1).unwrap();
    }
    out
}
