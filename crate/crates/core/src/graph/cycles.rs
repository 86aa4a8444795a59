use std::collections::VecDeque;

use thiserror::Error;

use super::topology::UnionFind;
use super::{Direction, EdgeIdx, MetricGraph, Subgraph, VertexIdx};

/// Default upper bound on the number of simple cycles enumerated.
pub const DEFAULT_CYCLE_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("more than {budget} simple cycles; enumeration aborted")]
    BudgetExceeded { budget: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WalkStep {
    pub edge: EdgeIdx,
    pub dir: Direction,
}

impl WalkStep {
    pub fn new(edge: EdgeIdx, dir: Direction) -> Self {
        Self { edge, dir }
    }
}

/// Closed edge walk starting and ending at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedWalk {
    pub start: VertexIdx,
    pub steps: Vec<WalkStep>,
}

impl ClosedWalk {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Vertex sequence `v0, v1, ..., vk` visited by the walk (`v0 == vk` when closed).
    pub fn vertex_sequence(&self, g: &MetricGraph) -> Vec<VertexIdx> {
        let mut out = vec![self.start];
        let mut at = self.start;
        for s in &self.steps {
            let (from, to) = g.edge(s.edge).ends(s.dir);
            if from != at {
                // Broken walk: report the jump so is_closed fails.
                out.push(usize::MAX);
            }
            at = to;
            out.push(to);
        }
        out
    }

    /// Consecutive steps share their traversal vertex and the walk returns to `start`.
    pub fn is_closed(&self, g: &MetricGraph) -> bool {
        let seq = self.vertex_sequence(g);
        !seq.contains(&usize::MAX) && seq.last() == Some(&self.start)
    }

    /// Edges of the walk, sorted and deduplicated.
    pub fn edge_set(&self) -> Vec<EdgeIdx> {
        let mut e: Vec<EdgeIdx> = self.steps.iter().map(|s| s.edge).collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    /// The same walk traversed backwards.
    pub fn reversed(&self) -> Self {
        Self {
            start: self.start,
            steps: self
                .steps
                .iter()
                .rev()
                .map(|s| WalkStep::new(s.edge, s.dir.reversed()))
                .collect(),
        }
    }

    /// Rotation of the walk that starts at vertex `v`, if the walk visits `v`.
    pub fn rotated_to(&self, g: &MetricGraph, v: VertexIdx) -> Option<Self> {
        let seq = self.vertex_sequence(g);
        let pos = seq[..seq.len() - 1].iter().position(|&x| x == v)?;
        let mut steps = self.steps[pos..].to_vec();
        steps.extend_from_slice(&self.steps[..pos]);
        Some(Self { start: v, steps })
    }
}

/// Spanning forest, chords and one fundamental cycle per chord.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSystem {
    /// Spanning forest edges, sorted by index.
    pub tree_edges: Vec<EdgeIdx>,
    /// Chords in ascending edge-id order.
    pub chords: Vec<EdgeIdx>,
    /// `cycles[j]` starts with `chords[j]` traversed forward, then returns through the tree.
    pub cycles: Vec<ClosedWalk>,
}

/// Kruskal-style forest in edge-id order, so smaller ids are preferred as tree edges.
pub fn cycle_system(sub: &Subgraph<'_>) -> CycleSystem {
    let g = sub.graph();
    let mut order: Vec<EdgeIdx> = sub.edges().to_vec();
    order.sort_by(|&a, &b| g.edge(a).id.cmp(&g.edge(b).id));

    let mut uf = UnionFind::new(g.vertex_count());
    let mut tree_edges = Vec::new();
    let mut chords = Vec::new();
    for &e in &order {
        let edge = g.edge(e);
        if uf.union(edge.origin, edge.terminus) {
            tree_edges.push(e);
        } else {
            chords.push(e);
        }
    }
    let mut tree_adj: Vec<Vec<EdgeIdx>> = vec![Vec::new(); g.vertex_count()];
    for &e in &tree_edges {
        tree_adj[g.edge(e).origin].push(e);
        tree_adj[g.edge(e).terminus].push(e);
    }
    let cycles = chords
        .iter()
        .map(|&c| {
            let edge = g.edge(c);
            let mut steps = vec![WalkStep::new(c, Direction::Forward)];
            steps.extend(tree_path(g, &tree_adj, edge.terminus, edge.origin));
            ClosedWalk {
                start: edge.origin,
                steps,
            }
        })
        .collect();
    tree_edges.sort_unstable();
    CycleSystem {
        tree_edges,
        chords,
        cycles,
    }
}

/// Unique forest path from `from` to `to` as oriented steps.
pub(crate) fn tree_path(
    g: &MetricGraph,
    tree_adj: &[Vec<EdgeIdx>],
    from: VertexIdx,
    to: VertexIdx,
) -> Vec<WalkStep> {
    if from == to {
        return Vec::new();
    }
    let mut parent: Vec<Option<(VertexIdx, EdgeIdx)>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &e in &tree_adj[v] {
            let w = g.edge(e).other(v);
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, e));
                queue.push_back(w);
            }
        }
    }
    let mut steps = Vec::new();
    let mut at = to;
    while at != from {
        let (p, e) = parent[at].expect("vertices lie in one tree");
        let dir = if g.edge(e).origin == p {
            Direction::Forward
        } else {
            Direction::Backward
        };
        steps.push(WalkStep::new(e, dir));
        at = p;
    }
    steps.reverse();
    steps
}

/// All simple cycles of the subgraph, each reported once.
///
/// Canonical form: the walk starts with its smallest-id edge traversed
/// forward. Loops are one-edge cycles; a pair of parallel edges is a 2-cycle.
pub fn simple_cycles(sub: &Subgraph<'_>) -> Result<Vec<ClosedWalk>, CycleError> {
    simple_cycles_with_budget(sub, DEFAULT_CYCLE_BUDGET)
}

pub fn simple_cycles_with_budget(
    sub: &Subgraph<'_>,
    budget: usize,
) -> Result<Vec<ClosedWalk>, CycleError> {
    let g = sub.graph();
    let mut order: Vec<EdgeIdx> = sub.edges().to_vec();
    order.sort_by(|&a, &b| g.edge(a).id.cmp(&g.edge(b).id));
    let mut rank = vec![usize::MAX; g.edge_count()];
    for (r, &e) in order.iter().enumerate() {
        rank[e] = r;
    }
    let mut incident: Vec<Vec<EdgeIdx>> = vec![Vec::new(); g.vertex_count()];
    for &e in &order {
        let edge = g.edge(e);
        if !edge.is_loop() {
            incident[edge.origin].push(e);
            incident[edge.terminus].push(e);
        }
    }

    let mut out = Vec::new();
    let mut search = Search {
        g,
        rank: &rank,
        incident: &incident,
        on_path: vec![false; g.vertex_count()],
        path: Vec::new(),
        out: &mut out,
        budget,
    };
    for &e in &order {
        let edge = g.edge(e);
        if edge.is_loop() {
            search.push(ClosedWalk {
                start: edge.origin,
                steps: vec![WalkStep::new(e, Direction::Forward)],
            })?;
            continue;
        }
        search.on_path[edge.origin] = true;
        search.on_path[edge.terminus] = true;
        search.path.push(WalkStep::new(e, Direction::Forward));
        search.extend(edge.origin, edge.terminus, rank[e])?;
        search.path.pop();
        search.on_path[edge.origin] = false;
        search.on_path[edge.terminus] = false;
    }
    Ok(out)
}

struct Search<'a> {
    g: &'a MetricGraph,
    rank: &'a [usize],
    incident: &'a [Vec<EdgeIdx>],
    on_path: Vec<bool>,
    path: Vec<WalkStep>,
    out: &'a mut Vec<ClosedWalk>,
    budget: usize,
}

impl Search<'_> {
    fn push(&mut self, walk: ClosedWalk) -> Result<(), CycleError> {
        if self.out.len() >= self.budget {
            return Err(CycleError::BudgetExceeded {
                budget: self.budget,
            });
        }
        self.out.push(walk);
        Ok(())
    }

    /// Extends the current path from `at`; only edges ranked above `min_rank` are used.
    fn extend(&mut self, start: VertexIdx, at: VertexIdx, min_rank: usize) -> Result<(), CycleError> {
        for i in 0..self.incident[at].len() {
            let f = self.incident[at][i];
            if self.rank[f] <= min_rank {
                continue;
            }
            let edge = self.g.edge(f);
            let dir = if edge.origin == at {
                Direction::Forward
            } else {
                Direction::Backward
            };
            let next = edge.other(at);
            if next == start {
                let mut steps = self.path.clone();
                steps.push(WalkStep::new(f, dir));
                self.push(ClosedWalk { start, steps })?;
            } else if !self.on_path[next] {
                self.on_path[next] = true;
                self.path.push(WalkStep::new(f, dir));
                self.extend(start, next, min_rank)?;
                self.path.pop();
                self.on_path[next] = false;
            }
        }
        Ok(())
    }
}

/// Closed walk using every listed edge exactly once (Hierholzer), starting at
/// the origin of the first edge. `None` if some vertex has odd degree or the
/// edges do not form one connected piece.
pub fn euler_circuit(g: &MetricGraph, edges: &[EdgeIdx]) -> Option<ClosedWalk> {
    let first = *edges.first()?;
    let mut adj: Vec<Vec<EdgeIdx>> = vec![Vec::new(); g.vertex_count()];
    for &e in edges {
        adj[g.edge(e).origin].push(e);
        adj[g.edge(e).terminus].push(e);
    }
    if adj.iter().any(|a| a.len() % 2 == 1) {
        return None;
    }
    let mut used = vec![false; g.edge_count()];
    let mut ptr = vec![0usize; g.vertex_count()];
    let start = g.edge(first).origin;
    // stack of (vertex, step that entered it)
    let mut stack: Vec<(VertexIdx, Option<WalkStep>)> = vec![(start, None)];
    let mut out: Vec<WalkStep> = Vec::with_capacity(edges.len());
    while let Some(&(v, _)) = stack.last() {
        while ptr[v] < adj[v].len() && used[adj[v][ptr[v]]] {
            ptr[v] += 1;
        }
        if ptr[v] == adj[v].len() {
            let (_, step) = stack.pop().expect("nonempty stack");
            out.extend(step);
            continue;
        }
        let e = adj[v][ptr[v]];
        used[e] = true;
        let edge = g.edge(e);
        let dir = if edge.origin == v {
            Direction::Forward
        } else {
            Direction::Backward
        };
        stack.push((edge.other(v), Some(WalkStep::new(e, dir))));
    }
    if out.len() != edges.len() {
        return None;
    }
    out.reverse();
    Some(ClosedWalk { start, steps: out })
}
