//! Spectral computations on finite metric graphs with Kirchhoff vertex conditions.
//!
//! * [`graph`]: the metric graph model, Betti numbers, core, cycles.
//! * [`length`]: exact lengths `p/q * unit` and the subgraphs `G_lambda`.
//! * [`spectral`]: eigenvalues and eigenfunctions by singular-value scanning.
//! * [`resonance`]: exact real resonances (eigenfunctions vanishing on all vertices).
//! * [`weyl`]: the Neumann-to-Dirichlet matrix `M_B(mu)`, residues and visibility.
//!
//! The numeric parts are generic over [`Real`] (`f32`, `f64`); exact parts use
//! arbitrary-precision rationals.

// `!(x > 0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod catalog;
pub mod graph;
pub mod length;
pub mod linalg;
pub mod resonance;
pub mod scalar;
pub mod spectral;
pub mod weyl;

pub use graph::{GraphError, GraphSpec, MetricGraph};
pub use length::{Measure, Step, UnitId};
pub use scalar::Real;

pub type Spectrum64 = spectral::Spectrum<f64>;
pub type Eigenvalue64 = spectral::Eigenvalue<f64>;
pub type EdgeFunction64 = spectral::EdgeFunction<f64>;
pub type TwSample64 = weyl::TwSample<f64>;
pub type ResidueEstimate64 = weyl::ResidueEstimate<f64>;
pub type VisibilityReport64 = weyl::VisibilityReport<f64>;
