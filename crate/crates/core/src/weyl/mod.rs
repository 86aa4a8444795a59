//! The Neumann-to-Dirichlet (Titchmarsh–Weyl) matrix `M_B(mu)` on a vertex set `B`,
//! its residues at eigenvalues, and which eigenvalues it can see.

mod residue;
mod select;
mod tw;
mod visibility;

pub use residue::{
    residue, residue_estimates, spectral_gap, ResidueAnalysis, ResidueEstimate, ResidueMethod,
    ResidueOptions,
};
pub use select::{select_b, SelectionMode, VertexSelection};
pub use tw::{tw_matrix, TwOptions, TwSample};
pub use visibility::{
    visibility_report, Visibility, VisibilityOptions, VisibilityReport, VisibilityRow, ResonanceMatch,
};

use thiserror::Error;

use crate::graph::VertexIdx;
use crate::length::LengthError;
use crate::spectral::SpectralError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeylError {
    #[error("vertex selection is empty")]
    EmptySelection,
    #[error("vertex index {0} out of range")]
    UnknownVertex(VertexIdx),
    #[error("vertex index {0} selected twice")]
    DuplicateVertex(VertexIdx),
    #[error("mu = {re}{im:+}i is too close to the spectrum (condition number {condition:e})")]
    NearSpectrum { re: f64, im: f64, condition: f64 },
    #[error("spectral gap {gap:e} at lambda = {lambda} is too small for a residue contour")]
    GapTooSmall { lambda: f64, gap: f64 },
    #[error("residue rank disagreement at lambda = {lambda}: contour {contour}, limit {limit}")]
    MethodDisagreement {
        lambda: f64,
        contour: usize,
        limit: usize,
    },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Length(#[from] LengthError),
}
