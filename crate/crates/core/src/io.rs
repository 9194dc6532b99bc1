//! Digraph documents: the edge-list text format, the JSON format and DOT
//! export.
//!
//! Edge-list grammar, one item per line:
//!
//! ```text
//! digraph <name>      optional, first non-comment line only
//! # comment
//! <token>             declares a vertex
//! <token> -> <token>  declares an edge (and both vertices)
//! ```
//!
//! Vertices are ordered by first appearance, which fixes the total order used
//! everywhere else.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct JsonDigraph {
    #[serde(default)]
    name: Option<String>,
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

/// A parsed digraph plus non-fatal remarks (duplicate edges).
#[derive(Debug)]
pub struct Parsed {
    pub digraph: Digraph,
    pub warnings: Vec<String>,
}

/// Parses either format; JSON is recognized by a leading `{`.
pub fn parse_digraph(text: &str) -> Result<Parsed> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

struct Builder {
    labels: Vec<String>,
    seen: HashSet<String>,
    edges: Vec<(String, String)>,
    edge_set: HashSet<(String, String)>,
    warnings: Vec<String>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            labels: Vec::new(),
            seen: HashSet::new(),
            edges: Vec::new(),
            edge_set: HashSet::new(),
            warnings: Vec::new(),
        }
    }

    fn vertex(&mut self, v: &str) {
        if self.seen.insert(v.to_string()) {
            self.labels.push(v.to_string());
        }
    }

    fn edge(&mut self, a: &str, b: &str, line: usize) -> Result<()> {
        if a == b {
            return Err(Error::SelfLoop(a.to_string()));
        }
        self.vertex(a);
        self.vertex(b);
        if self.edge_set.insert((a.to_string(), b.to_string())) {
            self.edges.push((a.to_string(), b.to_string()));
        } else {
            self.warnings.push(format!("line {line}: duplicate edge {a} -> {b} ignored"));
        }
        Ok(())
    }

    fn finish(self, name: &str) -> Result<Parsed> {
        let digraph = crate::digraph::build_digraph(name, &self.labels, &self.edges)?;
        Ok(Parsed {
            digraph,
            warnings: self.warnings,
        })
    }
}

fn parse_edge_list(text: &str) -> Result<Parsed> {
    let mut name: Option<String> = None;
    let mut b = Builder::new();
    let mut first = true;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = s.split_whitespace().collect();
        if first && toks.first() == Some(&"digraph") {
            first = false;
            match toks.len() {
                1 => name = Some(String::new()),
                2 => name = Some(toks[1].to_string()),
                _ => {
                    return Err(Error::Parse {
                        line,
                        reason: "header takes a single name".into(),
                    })
                }
            }
            continue;
        }
        first = false;
        match toks.as_slice() {
            [v] if !v.contains("->") => b.vertex(v),
            [a, "->", c] => b.edge(a, c, line)?,
            _ => {
                // tolerate missing spaces around the arrow
                let parts: Vec<&str> = s.split("->").map(str::trim).collect();
                match parts.as_slice() {
                    [a, c] if !a.is_empty() && !c.is_empty() && !a.contains(char::is_whitespace) && !c.contains(char::is_whitespace) => {
                        b.edge(a, c, line)?
                    }
                    _ => {
                        return Err(Error::Parse {
                            line,
                            reason: format!("expected `<token> -> <token>` or `<token>`, got `{s}`"),
                        })
                    }
                }
            }
        }
    }
    b.finish(name.as_deref().unwrap_or("g"))
}

fn parse_json(text: &str) -> Result<Parsed> {
    let doc: JsonDigraph = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        reason: e.to_string(),
    })?;
    let mut b = Builder::new();
    for v in &doc.vertices {
        if !b.seen.insert(v.clone()) {
            return Err(Error::DuplicateVertex(v.clone()));
        }
        b.labels.push(v.clone());
    }
    for [x, y] in &doc.edges {
        if !b.seen.contains(x) {
            return Err(Error::UnknownVertex(x.clone()));
        }
        if !b.seen.contains(y) {
            return Err(Error::UnknownVertex(y.clone()));
        }
        b.edge(x, y, 1)?;
    }
    b.finish(doc.name.as_deref().unwrap_or("g"))
}

/// Edge-list text: header, every vertex on its own line, then the edges.
pub fn to_edge_list(g: &Digraph) -> String {
    let mut s = format!("digraph {}\n", g.name());
    for l in g.labels() {
        s.push_str(l);
        s.push('\n');
    }
    for (a, b) in g.edge_labels() {
        s.push_str(&format!("{a} -> {b}\n"));
    }
    s
}

pub fn to_json_value(g: &Digraph) -> serde_json::Value {
    let mut m = BTreeMap::new();
    m.insert("name", serde_json::json!(g.name()));
    m.insert("vertices", serde_json::json!(g.labels()));
    let edges: Vec<[String; 2]> = g.edge_labels().into_iter().map(|(a, b)| [a, b]).collect();
    m.insert("edges", serde_json::json!(edges));
    serde_json::json!(m)
}

pub fn to_json(g: &Digraph) -> String {
    serde_json::to_string_pretty(&to_json_value(g)).expect("serializable")
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Directed DOT, no layout hints.
pub fn to_dot(g: &Digraph) -> String {
    let mut s = format!("digraph {} {{\n", dot_quote(g.name()));
    for l in g.labels() {
        s.push_str(&format!("  {};\n", dot_quote(l)));
    }
    for (a, b) in g.edge_labels() {
        s.push_str(&format!("  {} -> {};\n", dot_quote(&a), dot_quote(&b)));
    }
    s.push_str("}\n");
    s
}
