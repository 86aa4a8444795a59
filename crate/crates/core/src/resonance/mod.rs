//! Real resonances: eigenfunctions of the Kirchhoff Laplacian vanishing at every vertex.
//!
//! For `lambda = pi^2 / s^2` only edges of `G_lambda` (length a multiple of `s`)
//! can carry such a function, as `b_e sin(pi x / s)`. The dimension is
//! `beta1(G_lambda) - beta0_odd(G_lambda)`, where a component is odd when it
//! contains a cycle whose total multiplicity is odd.

mod basis;
mod oracle;
mod parity;

pub use basis::{check_scar, resonance_basis, resonance_basis_for, ScarFunction, ScarViolation};
pub use oracle::{dim_r_oracle, dim_r_oracle_for, kirchhoff_constraints};
pub use parity::{parity_report, ComponentParity, ParityReport};

use thiserror::Error;

use crate::graph::MetricGraph;
use crate::length::{build_lambda_subgraph, LambdaSubgraph, LengthError, Step};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ResonanceError {
    #[error(transparent)]
    Length(#[from] LengthError),
    /// A constructed basis function failed the exact checks. Always a bug.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResonanceReport {
    pub subgraph: LambdaSubgraph,
    /// `pi^2 / s^2` from the unit approximation (or the user value for numeric subgraphs).
    pub lambda: f64,
    pub beta1: usize,
    pub beta0_odd: usize,
    pub dim_r: usize,
    pub parity: ParityReport,
    /// Filled by [`resonance_basis`]; `dim_r` functions.
    pub basis: Option<Vec<ScarFunction>>,
}

impl ResonanceReport {
    pub fn step(&self) -> Option<&Step> {
        self.subgraph.step()
    }

    pub fn is_resonance(&self) -> bool {
        self.dim_r > 0
    }
}

/// Dimension count for an already constructed `G_lambda`.
pub fn report_for(g: &MetricGraph, sub: LambdaSubgraph) -> ResonanceReport {
    let parity = parity_report(g, &sub);
    let beta1 = parity.beta1();
    let beta0_odd = parity.beta0_odd();
    ResonanceReport {
        lambda: sub.lambda::<f64>(g),
        subgraph: sub,
        beta1,
        beta0_odd,
        dim_r: beta1 - beta0_odd,
        parity,
        basis: None,
    }
}

/// `dim R = beta1(G_lambda) - beta0_odd(G_lambda)` without building a basis.
pub fn dim_r(g: &MetricGraph, step: &Step) -> Result<ResonanceReport, LengthError> {
    Ok(report_for(g, build_lambda_subgraph(g, step)?))
}
