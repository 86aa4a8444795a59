use std::collections::VecDeque;

use crate::graph::{components, tree_path, ClosedWalk, EdgeIdx, MetricGraph, VertexIdx, WalkStep};
use crate::graph::Direction;
use crate::length::LambdaSubgraph;

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentParity {
    pub vertices: Vec<VertexIdx>,
    pub edges: Vec<EdgeIdx>,
    pub beta1: usize,
    pub is_odd: bool,
    /// A cycle of odd total multiplicity, when `is_odd`.
    pub witness: Option<ClosedWalk>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParityReport {
    pub components: Vec<ComponentParity>,
}

impl ParityReport {
    pub fn beta1(&self) -> usize {
        self.components.iter().map(|c| c.beta1).sum()
    }

    pub fn beta0_odd(&self) -> usize {
        self.components.iter().filter(|c| c.is_odd).count()
    }
}

/// Two-colours each component so that `colour(t) = colour(o) + n_e (mod 2)`;
/// a conflict means an odd cycle, returned as tree path plus the conflicting edge.
pub fn parity_report(g: &MetricGraph, sub: &LambdaSubgraph) -> ParityReport {
    let span = sub.subgraph(g);
    let n = g.vertex_count();
    let odd_edge = |e: EdgeIdx| sub.multiplicity(e).is_some_and(|m| m.bit(0));
    let mut adj: Vec<Vec<EdgeIdx>> = vec![Vec::new(); n];
    for &e in span.edges() {
        adj[g.edge(e).origin].push(e);
        if !g.edge(e).is_loop() {
            adj[g.edge(e).terminus].push(e);
        }
    }
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut out = Vec::new();
    for comp in components(&span) {
        let root = comp.vertices[0];
        colour[root] = Some(false);
        let mut tree_adj: Vec<Vec<EdgeIdx>> = vec![Vec::new(); n];
        let mut conflict: Option<EdgeIdx> = None;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let cv = colour[v].expect("queued vertices are coloured");
            for &e in &adj[v] {
                let w = g.edge(e).other(v);
                let want = cv ^ odd_edge(e);
                match colour[w] {
                    None => {
                        colour[w] = Some(want);
                        tree_adj[v].push(e);
                        tree_adj[w].push(e);
                        queue.push_back(w);
                    }
                    Some(cw) if cw != want && conflict.is_none() => conflict = Some(e),
                    _ => {}
                }
            }
        }
        let witness = conflict.map(|e| {
            let edge = g.edge(e);
            let mut steps = vec![WalkStep::new(e, Direction::Forward)];
            steps.extend(tree_path(g, &tree_adj, edge.terminus, edge.origin));
            ClosedWalk {
                start: edge.origin,
                steps,
            }
        });
        out.push(ComponentParity {
            beta1: comp.edges.len() + 1 - comp.vertices.len(),
            is_odd: witness.is_some(),
            witness,
            vertices: comp.vertices,
            edges: comp.edges,
        });
    }
    ParityReport { components: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphSpec;
    use crate::length::{build_lambda_subgraph, Measure, UnitId};

    #[test]
    fn odd_loop_and_even_loop() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .vertex("w")
            .edge("e", "w", "w", (1, 1), "one")
            .build()
            .unwrap();
        let odd = build_lambda_subgraph(&g, &Measure::from_ratio(1, 1, UnitId(0)).unwrap()).unwrap();
        let r = parity_report(&g, &odd);
        assert_eq!((r.beta1(), r.beta0_odd()), (1, 1));
        assert_eq!(r.components[0].witness.as_ref().unwrap().len(), 1);
        let even = build_lambda_subgraph(&g, &Measure::from_ratio(1, 2, UnitId(0)).unwrap()).unwrap();
        let r = parity_report(&g, &even);
        assert_eq!((r.beta1(), r.beta0_odd()), (1, 0));
    }

    #[test]
    fn witness_has_odd_total() {
        let g = crate::catalog::dumbbell();
        let s = Measure::from_ratio(1, 1, g.units().id("one").unwrap()).unwrap();
        let sub = build_lambda_subgraph(&g, &s).unwrap();
        let r = parity_report(&g, &sub);
        assert_eq!(r.components.len(), 1);
        let w = r.components[0].witness.as_ref().unwrap();
        assert!(w.is_closed(&g));
        let total: u64 = w
            .steps
            .iter()
            .map(|st| sub.multiplicity(st.edge).unwrap().iter_u64_digits().next().unwrap())
            .sum();
        assert_eq!(total % 2, 1);
    }

    #[test]
    fn empty_subgraph() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .unit("two", 2.0)
            .vertices(["a", "b"])
            .edge("e", "a", "b", (1, 1), "one")
            .build()
            .unwrap();
        let sub = build_lambda_subgraph(&g, &Measure::from_ratio(1, 1, UnitId(1)).unwrap()).unwrap();
        let r = parity_report(&g, &sub);
        assert!(r.components.is_empty());
        assert_eq!((r.beta1(), r.beta0_odd()), (0, 0));
    }
}
