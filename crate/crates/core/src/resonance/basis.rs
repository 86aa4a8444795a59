use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;

use super::{report_for, ResonanceError, ResonanceReport};
use crate::graph::{
    components, cycle_system, euler_circuit, ClosedWalk, Direction, EdgeIdx, MetricGraph, VertexIdx,
    WalkStep,
};
use crate::length::{build_lambda_subgraph, LambdaSubgraph, Step};
use crate::linalg::rank_fraction_free;
use crate::scalar::Real;
use crate::spectral::EdgeFunction;

/// `f_e(x) = b_e sin(pi x / s)` with integer `b_e`, zero off `G_lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScarFunction {
    /// Indexed by edge of the whole graph.
    pub b: Vec<i64>,
}

impl ScarFunction {
    pub fn support(&self) -> Vec<EdgeIdx> {
        (0..self.b.len()).filter(|&e| self.b[e] != 0).collect()
    }

    /// Floating-point form with `k = pi / s`.
    pub fn to_edge_function<T: Real>(&self, g: &MetricGraph, step: &Step) -> EdgeFunction<T> {
        let s: T = step.approx(g.units());
        EdgeFunction {
            k: T::PI() / s,
            coeffs: self.b.iter().map(|&b| (T::zero(), T::of(b as f64))).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScarViolation {
    WrongLength { expected: usize, got: usize },
    /// Nonzero coefficient on an edge outside `G_lambda`.
    OutsideSupport(EdgeIdx),
    /// Inward derivative sum (in units of `k`) nonzero at a vertex.
    Kirchhoff { vertex: VertexIdx, flux: i64 },
    Zero,
}

/// Exact checks: support in `G_lambda` (which makes every vertex value vanish,
/// since `sin(n pi) = 0`) and integer Kirchhoff balance at every vertex.
pub fn check_scar(g: &MetricGraph, sub: &LambdaSubgraph, f: &ScarFunction) -> Result<(), ScarViolation> {
    if f.b.len() != g.edge_count() {
        return Err(ScarViolation::WrongLength {
            expected: g.edge_count(),
            got: f.b.len(),
        });
    }
    let mut flux = vec![0i64; g.vertex_count()];
    for (e, &b) in f.b.iter().enumerate() {
        if b == 0 {
            continue;
        }
        let n = sub.multiplicity(e).ok_or(ScarViolation::OutsideSupport(e))?;
        let edge = g.edge(e);
        // f'(0) = b k, f'(L) = b k (-1)^n
        flux[edge.terminus] += if n.bit(0) { -b } else { b };
        flux[edge.origin] -= b;
    }
    if let Some(v) = flux.iter().position(|&x| x != 0) {
        return Err(ScarViolation::Kirchhoff {
            vertex: v,
            flux: flux[v],
        });
    }
    if f.b.iter().all(|&b| b == 0) {
        return Err(ScarViolation::Zero);
    }
    Ok(())
}

/// Winds `sin(pi t / s)` along a closed walk of even total multiplicity.
fn spool(g: &MetricGraph, sub: &LambdaSubgraph, walk: &ClosedWalk) -> ScarFunction {
    let mut b = vec![0i64; g.edge_count()];
    let mut offset_odd = false;
    for st in &walk.steps {
        let n_odd = sub.multiplicity(st.edge).expect("walk inside G_lambda").bit(0);
        let sign = match st.dir {
            Direction::Forward => offset_odd,
            Direction::Backward => !(offset_odd ^ n_odd),
        };
        b[st.edge] += if sign { -1 } else { 1 };
        offset_odd ^= n_odd;
    }
    debug_assert!(!offset_odd, "spooled walk must have even total multiplicity");
    ScarFunction { b }
}

fn walk_is_odd(sub: &LambdaSubgraph, walk: &ClosedWalk) -> bool {
    walk.steps
        .iter()
        .fold(false, |acc, st| acc ^ sub.multiplicity(st.edge).is_some_and(|n| n.bit(0)))
}

/// Shortest path inside `edges` from any vertex of `from` to any vertex of `to`.
fn connecting_path(
    g: &MetricGraph,
    edges: &[EdgeIdx],
    from: &BTreeSet<VertexIdx>,
    to: &BTreeSet<VertexIdx>,
) -> Option<(VertexIdx, Vec<WalkStep>, VertexIdx)> {
    let mut adj: Vec<Vec<EdgeIdx>> = vec![Vec::new(); g.vertex_count()];
    for &e in edges {
        adj[g.edge(e).origin].push(e);
        adj[g.edge(e).terminus].push(e);
    }
    let mut parent: Vec<Option<(VertexIdx, WalkStep)>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    let mut queue: VecDeque<VertexIdx> = VecDeque::new();
    for &v in from {
        seen[v] = true;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        if to.contains(&v) {
            let mut steps = Vec::new();
            let mut at = v;
            while let Some((p, st)) = parent[at] {
                steps.push(st);
                at = p;
            }
            steps.reverse();
            return Some((at, steps, v));
        }
        for &e in &adj[v] {
            let edge = g.edge(e);
            let w = edge.other(v);
            if !seen[w] {
                seen[w] = true;
                let dir = if edge.origin == v {
                    Direction::Forward
                } else {
                    Direction::Backward
                };
                parent[w] = Some((v, WalkStep::new(e, dir)));
                queue.push_back(w);
            }
        }
    }
    None
}

fn reverse_path(steps: &[WalkStep]) -> Vec<WalkStep> {
    steps
        .iter()
        .rev()
        .map(|s| WalkStep::new(s.edge, s.dir.reversed()))
        .collect()
}

fn inconsistent(msg: impl Into<String>) -> ResonanceError {
    ResonanceError::Inconsistent(msg.into())
}

/// Odd cycle `c` combined with the reference odd cycle `beta` into an even closed walk.
fn pair_with_reference(
    g: &MetricGraph,
    comp_edges: &[EdgeIdx],
    c: &ClosedWalk,
    beta: &ClosedWalk,
) -> Result<ClosedWalk, ResonanceError> {
    let ce: BTreeSet<EdgeIdx> = c.edge_set().into_iter().collect();
    let be: BTreeSet<EdgeIdx> = beta.edge_set().into_iter().collect();
    if !ce.is_disjoint(&be) {
        let diff: Vec<EdgeIdx> = ce.symmetric_difference(&be).copied().collect();
        return euler_circuit(g, &diff)
            .ok_or_else(|| inconsistent("symmetric difference of fundamental cycles is not one circuit"));
    }
    let cv: BTreeSet<VertexIdx> = c.vertex_sequence(g).into_iter().collect();
    let bv: BTreeSet<VertexIdx> = beta.vertex_sequence(g).into_iter().collect();
    let (p, path, q) = connecting_path(g, comp_edges, &cv, &bv)
        .ok_or_else(|| inconsistent("odd cycles of one component are not connected"))?;
    let c_at = c.rotated_to(g, p).ok_or_else(|| inconsistent("rotation failed"))?;
    let b_at = beta.rotated_to(g, q).ok_or_else(|| inconsistent("rotation failed"))?;
    let mut steps = c_at.steps;
    steps.extend(path.iter().copied());
    steps.extend(b_at.steps);
    steps.extend(reverse_path(&path));
    Ok(ClosedWalk { start: p, steps })
}

/// Resonance eigenfunctions for an already constructed `G_lambda`.
pub fn resonance_basis_for(g: &MetricGraph, sub: LambdaSubgraph) -> Result<ResonanceReport, ResonanceError> {
    let mut report = report_for(g, sub);
    let span = report.subgraph.subgraph(g);
    let cs = cycle_system(&span);
    let mut basis = Vec::new();
    for comp in components(&span) {
        let in_comp: Vec<&ClosedWalk> = cs
            .chords
            .iter()
            .zip(&cs.cycles)
            .filter(|(c, _)| comp.edges.binary_search(c).is_ok())
            .map(|(_, w)| w)
            .collect();
        let reference = in_comp.iter().copied().find(|w| walk_is_odd(&report.subgraph, w));
        for &w in &in_comp {
            let walk = match reference {
                _ if !walk_is_odd(&report.subgraph, w) => w.clone(),
                Some(beta) if std::ptr::eq(beta, w) => continue,
                Some(beta) => pair_with_reference(g, &comp.edges, w, beta)?,
                None => unreachable!("an odd cycle exists whenever one is odd"),
            };
            if walk_is_odd(&report.subgraph, &walk) || !walk.is_closed(g) {
                return Err(inconsistent("combined walk is not an even closed walk"));
            }
            basis.push(spool(g, &report.subgraph, &walk));
        }
    }

    if basis.len() != report.dim_r {
        return Err(inconsistent(format!(
            "constructed {} functions for dim R = {}",
            basis.len(),
            report.dim_r
        )));
    }
    for (i, f) in basis.iter().enumerate() {
        check_scar(g, &report.subgraph, f)
            .map_err(|v| inconsistent(format!("basis function {i}: {v:?}")))?;
    }
    let rows: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|f| f.b.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let rank = rank_fraction_free(&rows);
    if rank != basis.len() {
        return Err(inconsistent(format!("basis has rank {rank} < {}", basis.len())));
    }
    report.basis = Some(basis);
    Ok(report)
}

/// Exact basis of the resonance space, built cycle by cycle.
pub fn resonance_basis(g: &MetricGraph, step: &Step) -> Result<ResonanceReport, ResonanceError> {
    resonance_basis_for(g, build_lambda_subgraph(g, step)?)
}
