//! Text formats: the line-oriented graph format and cycle literals.
//!
//! ```text
//! # comment
//! v <id> <weight> [label]
//! e <id> <id>
//! c <id>
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::Ratio;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{CurveVertex, VertexId, WeightedDualGraph};
use crate::{Int, Rational};

/// A parsed graph file: the graph and the optional `c` mark.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: WeightedDualGraph,
    pub marked: Option<VertexId>,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into `(column, token)` pairs, columns 1-based.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut graph = WeightedDualGraph::new();
    let mut edges: Vec<(usize, usize, VertexId, VertexId)> = Vec::new();
    let mut marked: Option<(usize, usize, VertexId)> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(&(col, directive)) = toks.first() else {
            continue;
        };
        match directive {
            "v" => {
                if !(3..=4).contains(&toks.len()) {
                    return Err(parse_err(lineno, col, "expected `v <id> <weight> [label]`"));
                }
                let (wcol, wtok) = toks[2];
                let weight: i64 = wtok
                    .parse()
                    .map_err(|_| parse_err(lineno, wcol, format!("invalid weight `{wtok}`")))?;
                let vertex = CurveVertex {
                    id: VertexId::from(toks[1].1),
                    weight,
                    label: toks.get(3).map(|t| t.1.to_owned()),
                };
                graph.add_curve(vertex).map_err(|e| match e {
                    Error::DuplicateVertex(id) => {
                        parse_err(lineno, toks[1].0, format!("duplicate vertex `{id}`"))
                    }
                    other => other,
                })?;
            }
            "e" => {
                if toks.len() != 3 {
                    return Err(parse_err(lineno, col, "expected `e <id> <id>`"));
                }
                edges.push((lineno, toks[1].0, VertexId::from(toks[1].1), VertexId::from(toks[2].1)));
            }
            "c" => {
                if toks.len() != 2 {
                    return Err(parse_err(lineno, col, "expected `c <id>`"));
                }
                if marked.is_some() {
                    return Err(parse_err(lineno, col, "multiple `c` lines"));
                }
                marked = Some((lineno, toks[1].0, VertexId::from(toks[1].1)));
            }
            other => {
                return Err(parse_err(lineno, col, format!("unknown directive `{other}`")));
            }
        }
    }

    for (lineno, col, a, b) in edges {
        graph.add_edge(a, b).map_err(|e| {
            let msg = match &e {
                Error::UnknownVertex(id) => format!("edge refers to undeclared vertex `{id}`"),
                Error::DuplicateEdge(a, b) => format!("duplicate edge `{a}`-`{b}`"),
                Error::SelfLoop(a) => format!("self-loop at `{a}`"),
                other => other.to_string(),
            };
            parse_err(lineno, col, msg)
        })?;
    }
    let marked = match marked {
        Some((lineno, col, id)) => {
            if !graph.contains(&id) {
                return Err(parse_err(lineno, col, format!("`c` refers to undeclared vertex `{id}`")));
            }
            Some(id)
        }
        None => None,
    };
    Ok(GraphFile { graph, marked })
}

/// Canonical text: vertices by id, then sorted edges, then the mark.
pub fn emit_graph(graph: &WeightedDualGraph, marked: Option<&VertexId>) -> String {
    let mut out = String::new();
    for v in graph.vertices() {
        match &v.label {
            Some(l) => writeln!(out, "v {} {} {}", v.id, v.weight, l),
            None => writeln!(out, "v {} {}", v.id, v.weight),
        }
        .unwrap();
    }
    for (a, b) in graph.edges() {
        writeln!(out, "e {a} {b}").unwrap();
    }
    if let Some(c) = marked {
        writeln!(out, "c {c}").unwrap();
    }
    out
}

/// Parses `D1=2,D2=5,D3=-1/2`.
pub fn parse_cycle_literal(text: &str) -> Result<BTreeMap<VertexId, Rational>> {
    let mut out = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (id, value) = item
            .split_once('=')
            .ok_or_else(|| Error::CycleLiteral(format!("`{item}` is not `<id>=<value>`")))?;
        let id = VertexId::from(id.trim());
        if id.as_str().is_empty() {
            return Err(Error::CycleLiteral(format!("empty id in `{item}`")));
        }
        let value = Ratio::<Int>::from_str(value.trim())
            .map_err(|_| Error::CycleLiteral(format!("invalid coefficient in `{item}`")))?;
        if out.insert(id.clone(), value).is_some() {
            return Err(Error::CycleLiteral(format!("`{id}` listed twice")));
        }
    }
    Ok(out)
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `{"num": "8", "den": "7"}`; strings keep arbitrary precision intact.
pub fn rational_json(q: &Rational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}
