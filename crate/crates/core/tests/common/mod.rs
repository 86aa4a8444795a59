#![allow(dead_code)]

use std::collections::HashSet;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use qgraph::graph::{EdgeIdx, GraphSpec, MetricGraph};
use qgraph::length::Step;
use rand::Rng;

pub const UNIT_VALUES: [(&str, f64); 2] = [("u0", 1.0), ("u1", std::f64::consts::SQRT_2)];

/// `(from, to, p, q, unit)` per edge.
pub type EdgeDraw = (usize, usize, i64, i64, usize);

pub fn build(nv: usize, nu: usize, edges: &[EdgeDraw]) -> MetricGraph {
    let mut spec = GraphSpec::new();
    for &(token, value) in &UNIT_VALUES[..nu] {
        spec = spec.unit(token, value);
    }
    // only vertices that some edge touches; isolated vertices are invalid
    for v in 0..nv {
        if edges.iter().any(|&(a, b, ..)| a == v || b == v) {
            spec = spec.vertex(&format!("v{v}"));
        }
    }
    for (i, &(a, b, p, q, u)) in edges.iter().enumerate() {
        spec = spec.edge(
            &format!("e{i}"),
            &format!("v{a}"),
            &format!("v{b}"),
            (p, q),
            UNIT_VALUES[u].0,
        );
    }
    spec.build().expect("generated graphs are valid")
}

/// Multigraphs with at most 6 vertices, 9 edges (loops and parallels allowed),
/// 2 units and coefficients `p/q` with `p, q <= 6`.
pub fn arb_graph() -> impl Strategy<Value = MetricGraph> {
    (1..=6usize, 1..=2usize)
        .prop_flat_map(|(nv, nu)| {
            (
                Just(nv),
                Just(nu),
                prop::collection::vec((0..nv, 0..nv, 1..=6i64, 1..=6i64, 0..nu), 1..=9),
            )
        })
        .prop_map(|(nv, nu, edges)| build(nv, nu, &edges))
}

pub fn random_graph(rng: &mut impl Rng) -> MetricGraph {
    let nv = rng.gen_range(1..=6);
    let nu = rng.gen_range(1..=2);
    let ne = rng.gen_range(1..=9);
    let edges: Vec<EdgeDraw> = (0..ne)
        .map(|_| {
            (
                rng.gen_range(0..nv),
                rng.gen_range(0..nv),
                rng.gen_range(1..=6),
                rng.gen_range(1..=6),
                rng.gen_range(0..nu),
            )
        })
        .collect();
    build(nv, nu, &edges)
}

/// Steps `L(e)/n` for `n <= max_n`, deduplicated, in first-seen order.
pub fn small_steps(g: &MetricGraph, max_n: u64) -> Vec<Step> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for e in g.edges() {
        for n in 1..=max_n {
            let s = e.length.divided_by(n);
            if seen.insert(s.clone()) {
                out.push(s);
            }
        }
    }
    out
}

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Edge subsets that form a simple cycle: connected, every vertex of degree 2.
pub fn brute_force_cycles(g: &MetricGraph) -> Vec<Vec<EdgeIdx>> {
    let m = g.edge_count();
    assert!(m <= 16);
    let mut out = Vec::new();
    for mask in 1u32..(1 << m) {
        let edges: Vec<EdgeIdx> = (0..m).filter(|&e| mask & (1 << e) != 0).collect();
        let mut deg = vec![0usize; g.vertex_count()];
        for &e in &edges {
            deg[g.edge(e).origin] += 1;
            deg[g.edge(e).terminus] += 1;
        }
        if deg.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        let sub = qgraph::graph::Subgraph::spanned_by(g, edges.iter().copied());
        if qgraph::graph::betti(&sub).beta0 == 1 {
            out.push(edges);
        }
    }
    out
}
