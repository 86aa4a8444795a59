use std::collections::BTreeSet;

use super::{EdgeIdx, MetricGraph, VertexIdx};

/// An edge subset of a [`MetricGraph`] together with a vertex set.
///
/// [`Subgraph::full`] keeps every vertex (including isolated ones);
/// [`Subgraph::spanned_by`] keeps only the endpoints of the chosen edges.
/// The empty subgraph is legal.
#[derive(Clone, Debug)]
pub struct Subgraph<'g> {
    graph: &'g MetricGraph,
    edges: Vec<EdgeIdx>,
    vertices: Vec<VertexIdx>,
}

impl<'g> Subgraph<'g> {
    pub fn full(graph: &'g MetricGraph) -> Self {
        Self {
            graph,
            edges: (0..graph.edge_count()).collect(),
            vertices: (0..graph.vertex_count()).collect(),
        }
    }

    pub fn spanned_by(graph: &'g MetricGraph, edges: impl IntoIterator<Item = EdgeIdx>) -> Self {
        let edges: BTreeSet<EdgeIdx> = edges.into_iter().collect();
        let vertices: BTreeSet<VertexIdx> = edges
            .iter()
            .flat_map(|&e| [graph.edge(e).origin, graph.edge(e).terminus])
            .collect();
        Self {
            graph,
            edges: edges.into_iter().collect(),
            vertices: vertices.into_iter().collect(),
        }
    }

    /// Explicit edge and vertex sets; edge endpoints are added to the vertex set.
    pub fn with_vertices(
        graph: &'g MetricGraph,
        edges: impl IntoIterator<Item = EdgeIdx>,
        vertices: impl IntoIterator<Item = VertexIdx>,
    ) -> Self {
        let mut sub = Self::spanned_by(graph, edges);
        let mut all: BTreeSet<VertexIdx> = sub.vertices.iter().copied().collect();
        all.extend(vertices);
        sub.vertices = all.into_iter().collect();
        sub
    }

    pub fn graph(&self) -> &'g MetricGraph {
        self.graph
    }

    /// Sorted edge indices.
    pub fn edges(&self) -> &[EdgeIdx] {
        &self.edges
    }

    /// Sorted vertex indices.
    pub fn vertices(&self) -> &[VertexIdx] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty() && self.vertices.is_empty()
    }

    pub fn contains_edge(&self, e: EdgeIdx) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Same subgraph without edge `e`; the vertex set is kept.
    pub fn without_edge(&self, e: EdgeIdx) -> Self {
        Self {
            graph: self.graph,
            edges: self.edges.iter().copied().filter(|&x| x != e).collect(),
            vertices: self.vertices.clone(),
        }
    }
}

/// Component count and first Betti number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiData {
    pub beta0: usize,
    pub beta1: usize,
}

/// A connected component of a subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexIdx>,
    pub edges: Vec<EdgeIdx>,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Connected components, ordered by their smallest vertex.
pub fn components(sub: &Subgraph<'_>) -> Vec<Component> {
    let g = sub.graph();
    let mut uf = UnionFind::new(g.vertex_count());
    for &e in sub.edges() {
        uf.union(g.edge(e).origin, g.edge(e).terminus);
    }
    let mut by_root: Vec<Option<usize>> = vec![None; g.vertex_count()];
    let mut comps: Vec<Component> = Vec::new();
    for &v in sub.vertices() {
        let r = uf.find(v);
        let slot = *by_root[r].get_or_insert_with(|| {
            comps.push(Component {
                vertices: Vec::new(),
                edges: Vec::new(),
            });
            comps.len() - 1
        });
        comps[slot].vertices.push(v);
    }
    for &e in sub.edges() {
        let r = uf.find(g.edge(e).origin);
        let slot = by_root[r].expect("edge endpoints are subgraph vertices");
        comps[slot].edges.push(e);
    }
    comps
}

/// `beta0` by union-find, `beta1 = |E| - |V| + beta0`.
pub fn betti(sub: &Subgraph<'_>) -> BettiData {
    let beta0 = components(sub).len();
    let beta1 = sub.edges().len() + beta0 - sub.vertices().len();
    BettiData { beta0, beta1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphSpec;

    #[test]
    fn single_edge() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .vertices(["a", "b"])
            .edge("e", "a", "b", (1, 1), "one")
            .build()
            .unwrap();
        assert_eq!(betti(&Subgraph::full(&g)), BettiData { beta0: 1, beta1: 0 });
    }

    #[test]
    fn single_loop() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .vertex("w")
            .edge("e", "w", "w", (1, 1), "one")
            .build()
            .unwrap();
        assert_eq!(betti(&Subgraph::full(&g)), BettiData { beta0: 1, beta1: 1 });
    }

    #[test]
    fn isolated_vertices_count_as_components() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .vertices(["a", "b", "c"])
            .edge("e", "a", "b", (1, 1), "one")
            .edge("f", "b", "c", (1, 1), "one")
            .build()
            .unwrap();
        assert_eq!(
            betti(&Subgraph::with_vertices(&g, [0], [0, 1, 2])),
            BettiData { beta0: 2, beta1: 0 }
        );
        assert_eq!(
            betti(&Subgraph::spanned_by(&g, [0])),
            BettiData { beta0: 1, beta1: 0 }
        );
        assert_eq!(
            betti(&Subgraph::spanned_by(&g, [])),
            BettiData { beta0: 0, beta1: 0 }
        );
    }
}
