use std::collections::{BTreeMap, VecDeque};

use super::{EdgeIdx, Subgraph, VertexIdx};

/// Core of a graph and how the remaining edges hang off it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreDecomposition {
    /// Edges of the maximal subgraph without degree-one vertices, sorted.
    pub core_edges: Vec<EdgeIdx>,
    /// Vertices of degree one in the input.
    pub boundary: Vec<VertexIdx>,
    /// Vertices all of whose incident edges are core edges.
    pub proper_core: Vec<VertexIdx>,
    /// Each non-core edge mapped to the root of its pendant tree. The root is
    /// the core vertex the tree hangs from, or for a tree component the vertex
    /// left over once stripping ends.
    pub pendant_root: BTreeMap<EdgeIdx, VertexIdx>,
}

impl CoreDecomposition {
    pub fn is_core_edge(&self, e: EdgeIdx) -> bool {
        self.core_edges.binary_search(&e).is_ok()
    }
}

/// Repeatedly deletes degree-one vertices (with their edge) until none remain.
pub fn core_decomposition(sub: &Subgraph<'_>) -> CoreDecomposition {
    let g = sub.graph();
    let n = g.vertex_count();
    let mut incident: Vec<Vec<EdgeIdx>> = vec![Vec::new(); n];
    let mut degree = vec![0usize; n];
    for &e in sub.edges() {
        let edge = g.edge(e);
        incident[edge.origin].push(e);
        incident[edge.terminus].push(e);
        degree[edge.origin] += 1;
        degree[edge.terminus] += 1;
    }
    // A loop appears twice in `incident` of its vertex and contributes 2 to
    // the degree, so a vertex carrying a loop is never stripped.
    let boundary: Vec<VertexIdx> = sub
        .vertices()
        .iter()
        .copied()
        .filter(|&v| degree[v] == 1)
        .collect();

    let mut alive = vec![false; g.edge_count()];
    for &e in sub.edges() {
        alive[e] = true;
    }
    let mut stripped = vec![false; n];
    let mut queue: VecDeque<VertexIdx> = boundary.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        if stripped[v] || degree[v] != 1 {
            continue;
        }
        let e = *incident[v]
            .iter()
            .find(|&&e| alive[e])
            .expect("degree one vertex has a live edge");
        alive[e] = false;
        stripped[v] = true;
        degree[v] = 0;
        let w = g.edge(e).other(v);
        degree[w] -= 1;
        if degree[w] == 1 {
            queue.push_back(w);
        }
    }

    let core_edges: Vec<EdgeIdx> = sub.edges().iter().copied().filter(|&e| alive[e]).collect();
    let proper_core: Vec<VertexIdx> = sub
        .vertices()
        .iter()
        .copied()
        .filter(|&v| !stripped[v] && incident[v].iter().all(|&e| alive[e]))
        .collect();

    // Pendant trees: search from every surviving vertex along non-core edges.
    let mut pendant_root = BTreeMap::new();
    let mut seen = stripped.iter().map(|&s| !s).collect::<Vec<bool>>();
    for &root in sub.vertices() {
        if stripped[root] {
            continue;
        }
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in &incident[v] {
                if alive[e] || pendant_root.contains_key(&e) {
                    continue;
                }
                pendant_root.insert(e, root);
                let w = g.edge(e).other(v);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    CoreDecomposition {
        core_edges,
        boundary,
        proper_core,
        pendant_root,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphSpec;

    #[test]
    fn path_has_empty_core() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .vertices(["a", "b", "c", "d"])
            .edge("e1", "a", "b", (1, 1), "one")
            .edge("e2", "b", "c", (1, 1), "one")
            .edge("e3", "c", "d", (1, 1), "one")
            .build()
            .unwrap();
        let cd = core_decomposition(&Subgraph::full(&g));
        assert!(cd.core_edges.is_empty());
        assert_eq!(cd.boundary, vec![0, 3]);
        assert!(cd.proper_core.is_empty());
        assert_eq!(cd.pendant_root.len(), 3);
        let roots: std::collections::BTreeSet<_> = cd.pendant_root.values().collect();
        assert_eq!(roots.len(), 1);
    }

    #[test]
    fn loop_with_pendant() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .unit("pi", std::f64::consts::PI)
            .vertices(["v", "w"])
            .edge("e1", "v", "w", (1, 1), "pi")
            .edge("e2", "w", "w", (1, 1), "one")
            .build()
            .unwrap();
        let cd = core_decomposition(&Subgraph::full(&g));
        assert_eq!(cd.core_edges, vec![1]);
        assert_eq!(cd.boundary, vec![0]);
        assert!(cd.proper_core.is_empty());
        assert_eq!(cd.pendant_root.get(&0), Some(&1));
    }

    #[test]
    fn isolated_vertex_is_proper_core() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .vertices(["a", "b"])
            .edge("e", "a", "b", (1, 1), "one")
            .build()
            .unwrap();
        let cd = core_decomposition(&Subgraph::with_vertices(&g, [], [0]));
        assert_eq!(cd.proper_core, vec![0]);
        assert!(cd.boundary.is_empty());
    }

    #[test]
    fn single_edge_both_boundary() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .vertices(["a", "b"])
            .edge("e", "a", "b", (1, 1), "one")
            .build()
            .unwrap();
        let cd = core_decomposition(&Subgraph::full(&g));
        assert_eq!(cd.boundary, vec![0, 1]);
        assert!(cd.core_edges.is_empty());
    }
}
