use num_bigint::BigInt;

use crate::graph::MetricGraph;
use crate::length::{build_lambda_subgraph, LambdaSubgraph, LengthError, Step};
use crate::linalg::nullity_fraction_free;

/// Kirchhoff rows for `f_e = b_e sin(pi x / s)` on the members of `G_lambda`:
/// one row per vertex of the graph, one column per member edge.
pub fn kirchhoff_constraints(g: &MetricGraph, sub: &LambdaSubgraph) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::from(0); sub.members().len()]; g.vertex_count()];
    for (j, m) in sub.members().iter().enumerate() {
        let edge = g.edge(m.edge);
        let sign = if m.is_odd() { -1 } else { 1 };
        rows[edge.terminus][j] += sign;
        rows[edge.origin][j] -= 1;
    }
    rows
}

/// `dim R` by exact elimination, independent of the cycle-based count.
pub fn dim_r_oracle_for(g: &MetricGraph, sub: &LambdaSubgraph) -> usize {
    if sub.is_empty() {
        return 0;
    }
    nullity_fraction_free(&kirchhoff_constraints(g, sub), sub.members().len())
}

pub fn dim_r_oracle(g: &MetricGraph, step: &Step) -> Result<usize, LengthError> {
    Ok(dim_r_oracle_for(g, &build_lambda_subgraph(g, step)?))
}
