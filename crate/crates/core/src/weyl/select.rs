use std::collections::BTreeSet;

use super::WeylError;
use crate::graph::{core_decomposition, MetricGraph, Subgraph, VertexIdx};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelectionMode {
    /// Boundary vertices together with proper core vertices.
    Auto,
    Explicit(Vec<VertexIdx>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSelection {
    pub vertices: Vec<VertexIdx>,
    pub auto: bool,
    /// Vertices of the automatic set not in `vertices`. When nonempty, the
    /// link between residues and the resonance count is not guaranteed.
    pub missing: Vec<VertexIdx>,
}

impl VertexSelection {
    pub fn hypotheses_verified(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

fn auto_set(g: &MetricGraph) -> Vec<VertexIdx> {
    let cd = core_decomposition(&Subgraph::full(g));
    let set: BTreeSet<VertexIdx> = cd.boundary.into_iter().chain(cd.proper_core).collect();
    set.into_iter().collect()
}

pub fn select_b(g: &MetricGraph, mode: SelectionMode) -> Result<VertexSelection, WeylError> {
    let auto = auto_set(g);
    match mode {
        SelectionMode::Auto => {
            if auto.is_empty() {
                return Err(WeylError::EmptySelection);
            }
            Ok(VertexSelection {
                vertices: auto,
                auto: true,
                missing: Vec::new(),
            })
        }
        SelectionMode::Explicit(vs) => {
            if vs.is_empty() {
                return Err(WeylError::EmptySelection);
            }
            let mut seen = BTreeSet::new();
            for &v in &vs {
                if v >= g.vertex_count() {
                    return Err(WeylError::UnknownVertex(v));
                }
                if !seen.insert(v) {
                    return Err(WeylError::DuplicateVertex(v));
                }
            }
            let missing = auto.into_iter().filter(|v| !seen.contains(v)).collect();
            Ok(VertexSelection {
                vertices: vs,
                auto: false,
                missing,
            })
        }
    }
}
