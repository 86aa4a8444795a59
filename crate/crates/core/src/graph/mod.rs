//! Finite metric graphs and the graph-theoretic machinery built on them.
//!
//! A [`MetricGraph`] is a multigraph (loops and parallel edges allowed) whose
//! edges carry a fixed orientation `o(e) -> t(e)` and an exact length. Graphs
//! are built from an unvalidated [`GraphSpec`]; [`GraphSpec::validate`] lists
//! every violated invariant.

mod core;
mod cycles;
mod topology;

pub use self::core::{core_decomposition, CoreDecomposition};
pub use cycles::{
    cycle_system, euler_circuit, simple_cycles, simple_cycles_with_budget, ClosedWalk, CycleError,
    CycleSystem,
    WalkStep, DEFAULT_CYCLE_BUDGET,
};
pub use topology::{betti, components, BettiData, Component, Subgraph};

pub(crate) use cycles::tree_path;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::length::{ExactLength, Measure, UnitTable};
use crate::scalar::Real;

pub type VertexIdx = usize;
pub type EdgeIdx = usize;

/// Traversal direction of an edge relative to its orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// From `o(e)` to `t(e)`.
    Forward,
    /// From `t(e)` to `o(e)`.
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub id: String,
    pub origin: VertexIdx,
    pub terminus: VertexIdx,
    pub length: ExactLength,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.origin == self.terminus
    }

    /// Start and end vertex when traversed in `dir`.
    pub fn ends(&self, dir: Direction) -> (VertexIdx, VertexIdx) {
        match dir {
            Direction::Forward => (self.origin, self.terminus),
            Direction::Backward => (self.terminus, self.origin),
        }
    }

    /// The endpoint opposite to `v` (for loops, `v` itself).
    pub fn other(&self, v: VertexIdx) -> VertexIdx {
        if self.origin == v {
            self.terminus
        } else {
            self.origin
        }
    }
}

/// One edge of an unvalidated graph description.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeSpec {
    pub id: String,
    pub from: String,
    pub to: String,
    pub coeff: BigRational,
    pub unit: String,
}

/// Unvalidated graph description, as read from a file or assembled in code.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GraphSpec {
    pub units: Vec<(String, f64)>,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum Violation {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("unit `{0}` declared more than once")]
    DuplicateUnit(String),
    #[error("unit `{unit}` has non-positive approximation {value}")]
    NonpositiveUnit { unit: String, value: f64 },
    #[error("vertex `{0}` declared more than once")]
    DuplicateVertex(String),
    #[error("edge `{0}` declared more than once")]
    DuplicateEdge(String),
    #[error("edge `{edge}` references undeclared vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("edge `{edge}` references undeclared unit `{unit}`")]
    UnknownUnit { edge: String, unit: String },
    #[error("edge `{edge}` has non-positive length coefficient {coeff}")]
    NonpositiveLength { edge: String, coeff: BigRational },
    /// A vertex no edge touches carries no function values, and the vertex
    /// conditions there are vacuous.
    #[error("vertex `{0}` has no incident edge")]
    IsolatedVertex(String),
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("invalid graph: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl GraphSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(mut self, token: &str, value: f64) -> Self {
        self.units.push((token.to_string(), value));
        self
    }

    pub fn vertex(mut self, id: &str) -> Self {
        self.vertices.push(id.to_string());
        self
    }

    pub fn vertices<'a>(mut self, ids: impl IntoIterator<Item = &'a str>) -> Self {
        self.vertices.extend(ids.into_iter().map(str::to_string));
        self
    }

    /// Adds an edge of length `p/q * unit`.
    pub fn edge(mut self, id: &str, from: &str, to: &str, (p, q): (i64, i64), unit: &str) -> Self {
        let coeff = if q == 0 {
            BigRational::from_integer(BigInt::from(0))
        } else {
            BigRational::new(p.into(), q.into())
        };
        self.edges.push(EdgeSpec {
            id: id.to_string(),
            from: from.to_string(),
            to: to.to_string(),
            coeff,
            unit: unit.to_string(),
        });
        self
    }

    /// Lists every violated invariant; empty iff [`GraphSpec::build`] succeeds.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.vertices.is_empty() {
            out.push(Violation::EmptyGraph);
        }
        let mut seen = HashMap::new();
        for (token, value) in &self.units {
            if seen.insert(token.as_str(), ()).is_some() {
                out.push(Violation::DuplicateUnit(token.clone()));
            }
            if !(value.is_finite() && *value > 0.0) {
                out.push(Violation::NonpositiveUnit {
                    unit: token.clone(),
                    value: *value,
                });
            }
        }
        let mut seen = HashMap::new();
        for v in &self.vertices {
            if seen.insert(v.as_str(), ()).is_some() {
                out.push(Violation::DuplicateVertex(v.clone()));
            }
        }
        let mut seen_edges = HashMap::new();
        for e in &self.edges {
            if seen_edges.insert(e.id.as_str(), ()).is_some() {
                out.push(Violation::DuplicateEdge(e.id.clone()));
            }
            for end in [&e.from, &e.to] {
                if !seen.contains_key(end.as_str()) {
                    out.push(Violation::UnknownVertex {
                        edge: e.id.clone(),
                        vertex: end.clone(),
                    });
                }
            }
            if !self.units.iter().any(|(t, _)| t == &e.unit) {
                out.push(Violation::UnknownUnit {
                    edge: e.id.clone(),
                    unit: e.unit.clone(),
                });
            }
            if !e.coeff.is_positive() {
                out.push(Violation::NonpositiveLength {
                    edge: e.id.clone(),
                    coeff: e.coeff.clone(),
                });
            }
        }
        for v in &self.vertices {
            if !self.edges.iter().any(|e| &e.from == v || &e.to == v) {
                out.push(Violation::IsolatedVertex(v.clone()));
            }
        }
        out
    }

    pub fn build(&self) -> Result<MetricGraph, GraphError> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(GraphError::Invalid(violations));
        }
        let mut units = UnitTable::new();
        for (token, value) in &self.units {
            units.declare(token, *value).expect("validated unit");
        }
        let vertex_index: HashMap<String, VertexIdx> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                id: e.id.clone(),
                origin: vertex_index[&e.from],
                terminus: vertex_index[&e.to],
                length: Measure::new(e.coeff.clone(), units.id(&e.unit).expect("validated"))
                    .expect("validated length"),
            })
            .collect();
        Ok(MetricGraph {
            units,
            vertices: self.vertices.clone(),
            edges,
            vertex_index,
        })
    }
}

/// Validated finite metric graph. Immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricGraph {
    units: UnitTable,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexIdx>,
}

impl MetricGraph {
    pub fn units(&self) -> &UnitTable {
        &self.units
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeIdx) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_id(&self, v: VertexIdx) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_by_id(&self, id: &str) -> Option<VertexIdx> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_by_id(&self, id: &str) -> Option<EdgeIdx> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Degree counting a loop twice.
    pub fn degree(&self, v: VertexIdx) -> usize {
        self.edges
            .iter()
            .map(|e| (e.origin == v) as usize + (e.terminus == v) as usize)
            .sum()
    }

    /// Numeric edge length from the unit approximations.
    pub fn length<T: Real>(&self, e: EdgeIdx) -> T {
        self.edges[e].length.approx(&self.units)
    }

    pub fn total_length<T: Real>(&self) -> T {
        (0..self.edges.len()).fold(T::zero(), |acc, e| acc + self.length::<T>(e))
    }

    /// Copy of the graph with different unit approximations (same exact structure).
    pub fn with_unit_values(&self, values: &[f64]) -> Result<Self, crate::length::LengthError> {
        let mut g = self.clone();
        for (i, v) in values.iter().enumerate().take(g.units.len()) {
            g.units.set_value(crate::length::UnitId(i), *v)?;
        }
        Ok(g)
    }

    /// Unvalidated description of this graph.
    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            units: self
                .units
                .iter()
                .map(|(_, t, v)| (t.to_string(), v))
                .collect(),
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    from: self.vertices[e.origin].clone(),
                    to: self.vertices[e.terminus].clone(),
                    coeff: e.length.coeff().clone(),
                    unit: self.units.token(e.length.unit()).to_string(),
                })
                .collect(),
        }
    }
}
