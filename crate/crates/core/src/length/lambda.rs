use std::collections::HashSet;

use num_bigint::BigUint;

use super::{biguint_is_odd, rational_gcd, step_lambda, LengthError, Measure, Step};
use crate::graph::{simple_cycles, ClosedWalk, CycleError, EdgeIdx, MetricGraph, Subgraph};
use crate::scalar::Real;

/// Relative tolerance of the numeric (non-certified) membership test.
pub const DEFAULT_NUMERIC_REL_TOL: f64 = 1e-9;

/// Edge of `G_lambda` with `L(e) = multiplicity * s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    pub edge: EdgeIdx,
    pub multiplicity: BigUint,
}

impl Member {
    pub fn is_odd(&self) -> bool {
        biguint_is_odd(&self.multiplicity)
    }
}

/// How membership in `G_lambda` was decided.
#[derive(Clone, Debug, PartialEq)]
pub enum StepSource {
    /// Exact rational divisibility against a step.
    Exact(Step),
    /// Tolerance test against a floating-point `lambda`; not certified.
    Numeric { lambda: f64, rel_tol: f64 },
}

/// The subgraph of edges whose length is a natural multiple of the step.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSubgraph {
    pub source: StepSource,
    members: Vec<Member>,
}

impl LambdaSubgraph {
    /// Members sorted by edge index.
    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeIdx> + '_ {
        self.members.iter().map(|m| m.edge)
    }

    pub fn multiplicity(&self, e: EdgeIdx) -> Option<&BigUint> {
        self.members
            .binary_search_by_key(&e, |m| m.edge)
            .ok()
            .map(|i| &self.members[i].multiplicity)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn step(&self) -> Option<&Step> {
        match &self.source {
            StepSource::Exact(s) => Some(s),
            StepSource::Numeric { .. } => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self.source, StepSource::Exact(_))
    }

    /// `G_lambda` as a subgraph spanned by its members.
    pub fn subgraph<'g>(&self, graph: &'g MetricGraph) -> Subgraph<'g> {
        Subgraph::spanned_by(graph, self.edges())
    }

    pub fn lambda<T: Real>(&self, graph: &MetricGraph) -> T {
        match &self.source {
            StepSource::Exact(s) => step_lambda(s, graph.units()),
            StepSource::Numeric { lambda, .. } => T::of(*lambda),
        }
    }
}

/// Exact `G_lambda` for `lambda = pi^2 / s^2`. Never consults unit approximations.
pub fn build_lambda_subgraph(graph: &MetricGraph, step: &Step) -> Result<LambdaSubgraph, LengthError> {
    if step.unit().0 >= graph.units().len() {
        return Err(LengthError::UnknownUnit(format!("#{}", step.unit().0)));
    }
    let members = graph
        .edges()
        .iter()
        .enumerate()
        .filter_map(|(i, e)| {
            e.length.multiple_of(step).map(|n| Member {
                edge: i,
                multiplicity: n,
            })
        })
        .collect();
    Ok(LambdaSubgraph {
        source: StepSource::Exact(step.clone()),
        members,
    })
}

/// Tolerance-based `G_lambda` for a floating-point `lambda`.
///
/// An edge is a member when `L(e) * sqrt(lambda) / pi` is within `rel_tol`
/// (relative) of a positive integer. The result is marked non-certified.
pub fn build_lambda_subgraph_numeric(graph: &MetricGraph, lambda: f64, rel_tol: f64) -> LambdaSubgraph {
    let k = lambda.max(0.0).sqrt();
    let members = (0..graph.edge_count())
        .filter_map(|e| {
            let x = graph.length::<f64>(e) * k / std::f64::consts::PI;
            let n = x.round();
            (n >= 1.0 && (x - n).abs() <= rel_tol * x).then(|| Member {
                edge: e,
                multiplicity: BigUint::from(n as u64),
            })
        })
        .collect();
    LambdaSubgraph {
        source: StepSource::Numeric { lambda, rel_tol },
        members,
    }
}

/// A step `L(e)/n` together with its numeric `lambda`.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateStep<T> {
    pub step: Step,
    pub lambda: T,
}

/// All distinct steps `L(e)/n` with `pi^2/s^2 <= lambda_max`, by ascending `lambda`.
pub fn candidate_steps<T: Real>(graph: &MetricGraph, lambda_max: T) -> Vec<CandidateStep<T>> {
    let mut seen: HashSet<Step> = HashSet::new();
    let mut out = Vec::new();
    if !(lambda_max > T::zero()) {
        return out;
    }
    for e in graph.edges() {
        let mut n: u64 = 1;
        loop {
            let step = e.length.divided_by(n);
            let lambda: T = step_lambda(&step, graph.units());
            if !(lambda <= lambda_max) {
                break;
            }
            if seen.insert(step.clone()) {
                out.push(CandidateStep { step, lambda });
            }
            n += 1;
        }
    }
    out.sort_by(|a, b| {
        a.lambda
            .partial_cmp(&b.lambda)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.step.cmp(&b.step))
    });
    out
}

/// Infimum of `pi^2 / u_C^2` over commensurate simple cycles.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaG<T> {
    /// `+inf` when no commensurate cycle exists.
    pub value: T,
    /// A maximising cycle with its `u_C`.
    pub witness: Option<(ClosedWalk, Measure)>,
}

/// Largest common unit `u_C` of a cycle whose edges all share one unit.
pub fn cycle_unit(graph: &MetricGraph, cycle: &ClosedWalk) -> Option<Measure> {
    let mut edges = cycle.steps.iter().map(|s| &graph.edge(s.edge).length);
    let first = edges.next()?;
    let mut coeff = first.coeff().clone();
    for l in edges {
        if l.unit() != first.unit() {
            return None;
        }
        coeff = rational_gcd(&coeff, l.coeff());
    }
    Measure::new(coeff, first.unit()).ok()
}

pub fn lambda_g<T: Real>(graph: &MetricGraph) -> Result<LambdaG<T>, CycleError> {
    let cycles = simple_cycles(&Subgraph::full(graph))?;
    let mut best: Option<(T, ClosedWalk, Measure)> = None;
    for c in cycles {
        let Some(u) = cycle_unit(graph, &c) else {
            continue;
        };
        let value: T = u.approx(graph.units());
        if best.as_ref().is_none_or(|(b, _, _)| value > *b) {
            best = Some((value, c, u));
        }
    }
    Ok(match best {
        Some((u, c, m)) => LambdaG {
            value: T::PI() * T::PI() / (u * u),
            witness: Some((c, m)),
        },
        None => LambdaG {
            value: T::infinity(),
            witness: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphSpec;
    use crate::length::UnitId;

    fn interval() -> MetricGraph {
        GraphSpec::new()
            .unit("one", 1.0)
            .vertices(["a", "b"])
            .edge("e", "a", "b", (1, 1), "one")
            .build()
            .unwrap()
    }

    #[test]
    fn single_edge_candidates() {
        let g = interval();
        let c = candidate_steps::<f64>(&g, 50.0);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].step, Measure::from_ratio(1, 1, UnitId(0)).unwrap());
        assert_eq!(c[1].step, Measure::from_ratio(1, 2, UnitId(0)).unwrap());
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((c[0].lambda - pi2).abs() < 1e-12);
        assert!((c[1].lambda - 4.0 * pi2).abs() < 1e-12);
    }

    #[test]
    fn cutoff_below_first_candidate() {
        assert!(candidate_steps::<f64>(&interval(), 9.0).is_empty());
        assert!(candidate_steps::<f64>(&interval(), -1.0).is_empty());
    }

    #[test]
    fn unused_unit_gives_empty_subgraph() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .unit("two", 2.0f64.sqrt())
            .vertices(["a", "b"])
            .edge("e", "a", "b", (1, 1), "one")
            .build()
            .unwrap();
        let s = Measure::from_ratio(1, 3, UnitId(1)).unwrap();
        assert!(build_lambda_subgraph(&g, &s).unwrap().is_empty());
        let bad = Measure::from_ratio(1, 3, UnitId(7)).unwrap();
        assert!(build_lambda_subgraph(&g, &bad).is_err());
    }

    #[test]
    fn numeric_fallback_matches_exact_on_interval() {
        let g = interval();
        let pi2 = std::f64::consts::PI.powi(2);
        let sub = build_lambda_subgraph_numeric(&g, 4.0 * pi2, DEFAULT_NUMERIC_REL_TOL);
        assert!(!sub.is_certified());
        assert_eq!(sub.multiplicity(0), Some(&BigUint::from(2u32)));
        assert!(build_lambda_subgraph_numeric(&g, 5.0, DEFAULT_NUMERIC_REL_TOL).is_empty());
    }

    #[test]
    fn tree_has_infinite_lambda_g() {
        let lg = lambda_g::<f64>(&interval()).unwrap();
        assert!(lg.value.is_infinite());
        assert!(lg.witness.is_none());
    }
}
