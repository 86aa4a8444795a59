//! Small named graphs used in tests, documentation and the bundled graph files.

use std::f64::consts::PI;

use crate::graph::{GraphSpec, MetricGraph};

/// Two triangles of unit edges sharing a centre vertex, each side closed off by
/// triangles of `sqrt3` edges, and a pendant of length `pi/2` on the right.
pub fn dumbbell_spec() -> GraphSpec {
    GraphSpec::new()
        .unit("one", 1.0)
        .unit("sqrt3", 1.7320508075688772)
        .unit("pi", PI)
        .vertices(["c", "ul", "ur", "ll", "lr", "la", "ra", "fr"])
        .edge("d1", "c", "ul", (1, 1), "one")
        .edge("d2", "c", "ur", (1, 1), "one")
        .edge("d3", "ul", "ur", (1, 1), "one")
        .edge("d4", "c", "ll", (1, 1), "one")
        .edge("d5", "c", "lr", (1, 1), "one")
        .edge("d6", "ll", "lr", (1, 1), "one")
        .edge("s1", "ur", "lr", (1, 1), "sqrt3")
        .edge("s2", "lr", "ra", (1, 1), "sqrt3")
        .edge("s3", "ur", "ra", (1, 1), "sqrt3")
        .edge("s4", "ul", "ll", (1, 1), "sqrt3")
        .edge("s5", "ll", "la", (1, 1), "sqrt3")
        .edge("s6", "ul", "la", (1, 1), "sqrt3")
        .edge("t", "ra", "fr", (1, 2), "pi")
}

/// Loop of length 1 at `w` with a pendant edge of length `pi` from `v`.
pub fn loop_pendant_spec() -> GraphSpec {
    GraphSpec::new()
        .unit("one", 1.0)
        .unit("pi", PI)
        .vertices(["v", "w"])
        .edge("e1", "v", "w", (1, 1), "pi")
        .edge("e2", "w", "w", (1, 1), "one")
}

/// A single edge of length `pi`.
pub fn interval_pi_spec() -> GraphSpec {
    GraphSpec::new()
        .unit("pi", PI)
        .vertices(["a", "b"])
        .edge("e", "a", "b", (1, 1), "pi")
}

/// Triangle with unit edges.
pub fn triangle_spec() -> GraphSpec {
    GraphSpec::new()
        .unit("one", 1.0)
        .vertices(["a", "b", "c"])
        .edge("e1", "a", "b", (1, 1), "one")
        .edge("e2", "b", "c", (1, 1), "one")
        .edge("e3", "c", "a", (1, 1), "one")
}

/// A loop of length 1.
pub fn loop_one_spec() -> GraphSpec {
    GraphSpec::new()
        .unit("one", 1.0)
        .vertex("w")
        .edge("e", "w", "w", (1, 1), "one")
}

/// Star with three arms of lengths 1, 1/2 and 3/2.
pub fn tree_spec() -> GraphSpec {
    GraphSpec::new()
        .unit("one", 1.0)
        .vertices(["hub", "a", "b", "c"])
        .edge("e1", "hub", "a", (1, 1), "one")
        .edge("e2", "hub", "b", (1, 2), "one")
        .edge("e3", "hub", "c", (3, 2), "one")
}

fn build(spec: GraphSpec) -> MetricGraph {
    spec.build().expect("catalog graphs are valid")
}

pub fn dumbbell() -> MetricGraph {
    build(dumbbell_spec())
}

pub fn loop_pendant() -> MetricGraph {
    build(loop_pendant_spec())
}

pub fn interval_pi() -> MetricGraph {
    build(interval_pi_spec())
}

pub fn triangle() -> MetricGraph {
    build(triangle_spec())
}

pub fn loop_one() -> MetricGraph {
    build(loop_one_spec())
}

pub fn tree() -> MetricGraph {
    build(tree_spec())
}
