//! Line-oriented graph files.
//!
//! ```text
//! # comment
//! unit <token> <decimal>
//! vertex <id>
//! edge <id> <from> <to> <p>/<q> <unit>
//! ```
//!
//! Tokens are whitespace-free and may not contain `#`. A `#` anywhere starts a
//! comment. Every unit and vertex must be declared before an edge uses it.
//! The length coefficient may be written `p/q` in any form or as an integer
//! `p`; it is reduced to lowest terms on load.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use qgraph::graph::{EdgeSpec, Violation};
use qgraph::{GraphSpec, MetricGraph};
use thiserror::Error;

/// One problem in a graph file, with its 1-based line number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for LineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Error)]
pub enum GraphFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("syntax error{}", list(.0))]
    Syntax(Vec<LineError>),
    #[error("invalid graph{}", list(.0))]
    Invalid(Vec<LineError>),
}

impl GraphFileError {
    pub fn lines(&self) -> &[LineError] {
        match self {
            GraphFileError::Io { .. } => &[],
            GraphFileError::Syntax(v) | GraphFileError::Invalid(v) => v,
        }
    }
}

fn list(errors: &[LineError]) -> String {
    errors.iter().map(|e| format!("\n  {e}")).collect()
}

/// Declarations in file order, with the line each came from.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GraphFile {
    pub spec: GraphSpec,
    pub unit_lines: Vec<usize>,
    pub vertex_lines: Vec<usize>,
    pub edge_lines: Vec<usize>,
}

impl GraphFile {
    pub fn build(&self) -> Result<MetricGraph, GraphFileError> {
        let violations = self.spec.validate();
        if violations.is_empty() {
            return self
                .spec
                .build()
                .map_err(|e| GraphFileError::Invalid(vec![LineError { line: 0, message: e.to_string() }]));
        }
        let errors = violations
            .iter()
            .map(|v| LineError {
                line: self.line_of(v),
                message: v.to_string(),
            })
            .collect();
        Err(GraphFileError::Invalid(errors))
    }

    fn line_of(&self, v: &Violation) -> usize {
        let unit = |t: &str| self.spec.units.iter().rposition(|(u, _)| u == t).map(|i| self.unit_lines[i]);
        let vertex = |id: &str| self.spec.vertices.iter().rposition(|x| x == id).map(|i| self.vertex_lines[i]);
        let edge = |id: &str| self.spec.edges.iter().rposition(|e| e.id == id).map(|i| self.edge_lines[i]);
        match v {
            Violation::EmptyGraph => None,
            Violation::DuplicateUnit(t) | Violation::NonpositiveUnit { unit: t, .. } => unit(t),
            Violation::DuplicateVertex(id) | Violation::IsolatedVertex(id) => vertex(id),
            Violation::DuplicateEdge(id)
            | Violation::UnknownVertex { edge: id, .. }
            | Violation::UnknownUnit { edge: id, .. }
            | Violation::NonpositiveLength { edge: id, .. } => edge(id),
        }
        .unwrap_or(0)
    }
}

fn parse_coeff(text: &str) -> Result<BigRational, String> {
    let bad = || format!("expected a length coefficient `p/q`, got `{text}`");
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(format!("zero denominator in `{text}`"));
    }
    Ok(BigRational::new(p, q))
}

/// Parses graph-file text. Syntax errors from all lines are collected.
pub fn parse_str(text: &str) -> Result<GraphFile, GraphFileError> {
    let mut file = GraphFile::default();
    let mut errors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        let Some((&kind, args)) = words.split_first() else {
            continue;
        };
        let mut err = |message: String| errors.push(LineError { line, message });
        match (kind, args) {
            ("unit", [token, value]) => match value.parse::<f64>() {
                Ok(v) => {
                    file.spec.units.push((token.to_string(), v));
                    file.unit_lines.push(line);
                }
                Err(_) => err(format!("unit `{token}`: `{value}` is not a decimal number")),
            },
            ("vertex", [id]) => {
                file.spec.vertices.push(id.to_string());
                file.vertex_lines.push(line);
            }
            ("edge", [id, from, to, coeff, unit]) => {
                let mut ok = true;
                for v in [from, to] {
                    if !file.spec.vertices.iter().any(|x| x == v) {
                        err(format!("edge `{id}`: vertex `{v}` is not declared"));
                        ok = false;
                    }
                }
                if !file.spec.units.iter().any(|(u, _)| u == unit) {
                    err(format!("edge `{id}`: unit `{unit}` is not declared"));
                    ok = false;
                }
                match parse_coeff(coeff) {
                    Ok(c) if ok => {
                        file.spec.edges.push(EdgeSpec {
                            id: id.to_string(),
                            from: from.to_string(),
                            to: to.to_string(),
                            coeff: c,
                            unit: unit.to_string(),
                        });
                        file.edge_lines.push(line);
                    }
                    Ok(_) => {}
                    Err(m) => err(format!("edge `{id}`: {m}")),
                }
            }
            ("unit", _) => err("expected `unit <token> <decimal>`".into()),
            ("vertex", _) => err("expected `vertex <id>`".into()),
            ("edge", _) => err("expected `edge <id> <from> <to> <p>/<q> <unit>`".into()),
            (other, _) => err(format!("unknown declaration `{other}`")),
        }
    }
    if errors.is_empty() {
        Ok(file)
    } else {
        Err(GraphFileError::Syntax(errors))
    }
}

/// Parses and validates graph-file text.
pub fn parse_graph_str(text: &str) -> Result<MetricGraph, GraphFileError> {
    parse_str(text)?.build()
}

pub fn parse_graph(path: &Path) -> Result<MetricGraph, GraphFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| GraphFileError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_graph_str(&text)
}

/// Canonical text: units, then vertices, then edges, each in declaration order.
pub fn serialize(g: &MetricGraph) -> String {
    serialize_spec(&g.to_spec())
}

pub fn serialize_spec(spec: &GraphSpec) -> String {
    let mut out = String::new();
    for (token, value) in &spec.units {
        // `{:?}` keeps a round-trippable decimal.
        let _ = writeln!(out, "unit {token} {value:?}");
    }
    for v in &spec.vertices {
        let _ = writeln!(out, "vertex {v}");
    }
    for e in &spec.edges {
        let _ = writeln!(
            out,
            "edge {} {} {} {}/{} {}",
            e.id,
            e.from,
            e.to,
            e.coeff.numer(),
            e.coeff.denom(),
            e.unit
        );
    }
    out
}
