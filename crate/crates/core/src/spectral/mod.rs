//! Eigenvalues of the Kirchhoff Laplacian by rank-deficiency scanning.
//!
//! On each edge an eigenfunction for `lambda = k^2` is `a cos(kx) + b sin(kx)`;
//! together with the vertex values `c_v` this gives a square linear system
//! whose nullity is `dim ker(-Delta - k^2)`. Eigenvalues are located as zeros
//! of the smallest singular value of that system.

mod eigenspace;
mod scan;
mod secular;

pub use eigenspace::{eigenspace, Eigenspace, EigenspaceOptions, EdgeFunction};
pub use scan::{eigenvalues_in, sigma_min, Eigenvalue, SpectralOptions, SpectralWarning, Spectrum};
pub use secular::{
    assemble_secular, assemble_secular_complex, nullity_at, ComplexSecularSystem, EdgeAnsatz,
    RowLabel, SecularSystem,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("spectral cutoff must be positive, got {0}")]
    NonpositiveCutoff(f64),
    #[error("spectral parameter must be non-negative, got {0}")]
    NegativeLambda(f64),
}
