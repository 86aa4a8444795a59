use rayon::prelude::*;

use super::residue::{residue_estimates, spectral_gap, ResidueAnalysis, ResidueOptions};
use super::{VertexSelection, WeylError};
use crate::graph::MetricGraph;
use crate::length::{build_lambda_subgraph_numeric, candidate_steps, Step, DEFAULT_NUMERIC_REL_TOL};
use crate::resonance::{dim_r, report_for};
use crate::scalar::Real;
use crate::spectral::{eigenvalues_in, SpectralOptions, SpectralWarning};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VisibilityOptions {
    pub spectral: SpectralOptions,
    pub residue: ResidueOptions,
    /// A numeric eigenvalue matches the step `s` when `|lambda - pi^2/s^2| <= match_tol * max(1, lambda)`.
    pub match_tol: f64,
    /// Relative tolerance of the numeric `G_lambda` used when no step matches.
    pub numeric_rel_tol: f64,
}

impl Default for VisibilityOptions {
    fn default() -> Self {
        Self {
            spectral: SpectralOptions::default(),
            residue: ResidueOptions::default(),
            match_tol: 1e-6,
            numeric_rel_tol: DEFAULT_NUMERIC_REL_TOL,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ResonanceMatch {
    /// `lambda = 0`: resonances are positive by definition.
    Zero,
    Exact { step: Step, beta1: usize, beta0_odd: usize },
    /// No step matched; tolerance-based `G_lambda`, not certified.
    Numeric { beta1: usize, beta0_odd: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Visibility {
    /// `rank = dim ker > 0`.
    Full,
    /// `0 < rank < dim ker`.
    Partial,
    /// `rank = 0`.
    Invisible,
}

impl Visibility {
    pub fn as_str(self) -> &'static str {
        match self {
            Visibility::Full => "fully-visible",
            Visibility::Partial => "partially-visible",
            Visibility::Invisible => "invisible",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VisibilityRow<T> {
    pub lambda: T,
    pub dim_ker: usize,
    pub dim_r: usize,
    pub resonance: ResonanceMatch,
    /// Contour residue analysis, or the error that prevented it.
    pub residue: Result<ResidueAnalysis<T>, WeylError>,
    pub gap: T,
    pub notes: Vec<String>,
}

impl<T: Real> VisibilityRow<T> {
    pub fn rank(&self) -> Option<usize> {
        self.residue.as_ref().ok().map(|a| a.rank())
    }

    /// `dim ker = rank + dim R`, with agreeing residue methods.
    pub fn identity_holds(&self) -> bool {
        match &self.residue {
            Ok(a) => a.ranks_agree() && self.dim_ker == a.rank() + self.dim_r,
            Err(_) => false,
        }
    }

    pub fn visibility(&self) -> Option<Visibility> {
        self.rank().map(|r| {
            if r == 0 {
                Visibility::Invisible
            } else if r >= self.dim_ker {
                Visibility::Full
            } else {
                Visibility::Partial
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VisibilityReport<T> {
    pub selection: VertexSelection,
    pub lambda_max: T,
    pub rows: Vec<VisibilityRow<T>>,
    pub spectral_warnings: Vec<SpectralWarning<T>>,
    pub options: VisibilityOptions,
}

impl<T: Real> VisibilityReport<T> {
    pub fn hypotheses_verified(&self) -> bool {
        self.selection.hypotheses_verified()
    }

    pub fn all_identities_hold(&self) -> bool {
        self.rows.iter().all(|r| r.identity_holds())
    }
}

/// Classifies every eigenvalue in `[0, lambda_max]` by the rank of its residue.
pub fn visibility_report<T: Real>(
    g: &MetricGraph,
    b: &VertexSelection,
    lambda_max: T,
    opts: &VisibilityOptions,
) -> Result<VisibilityReport<T>, WeylError> {
    // Scan past the cutoff so the gap above the last reported eigenvalue is known.
    let total: T = g.total_length();
    let k_pad = lambda_max.max(T::zero()).sqrt() + T::PI() / total;
    let spectrum = eigenvalues_in(g, k_pad * k_pad, &opts.spectral)?;
    let candidates = candidate_steps(g, k_pad * k_pad);
    let match_tol = T::of(opts.match_tol);

    let indices: Vec<usize> = (0..spectrum.eigenvalues.len())
        .filter(|&i| spectrum.eigenvalues[i].lambda <= lambda_max)
        .collect();
    let rows = indices
        .par_iter()
        .map(|&i| -> Result<VisibilityRow<T>, WeylError> {
            let ev = &spectrum.eigenvalues[i];
            let lambda = ev.lambda;
            let mut notes = Vec::new();
            let (resonance, dim) = if i == 0 {
                (ResonanceMatch::Zero, 0)
            } else {
                let tol = match_tol * T::one().max(lambda);
                let best = candidates
                    .iter()
                    .filter(|c| (c.lambda - lambda).abs() <= tol)
                    .min_by(|a, b| {
                        (a.lambda - lambda)
                            .abs()
                            .partial_cmp(&(b.lambda - lambda).abs())
                            .unwrap_or(std::cmp::Ordering::Equal)
                    });
                match best {
                    Some(c) => {
                        let r = dim_r(g, &c.step)?;
                        (
                            ResonanceMatch::Exact {
                                step: c.step.clone(),
                                beta1: r.beta1,
                                beta0_odd: r.beta0_odd,
                            },
                            r.dim_r,
                        )
                    }
                    None => {
                        let sub = build_lambda_subgraph_numeric(
                            g,
                            lambda.to_f64_lossy(),
                            opts.numeric_rel_tol,
                        );
                        let r = report_for(g, sub);
                        notes.push("no commensurate structure detected".to_string());
                        (
                            ResonanceMatch::Numeric {
                                beta1: r.beta1,
                                beta0_odd: r.beta0_odd,
                            },
                            r.dim_r,
                        )
                    }
                }
            };
            let gap = spectral_gap(&spectrum, i);
            let residue = residue_estimates(g, b, lambda, gap, &opts.residue);
            if let Ok(a) = &residue {
                if !a.ranks_agree() {
                    notes.push(format!(
                        "residue methods disagree: contour rank {}, limit rank {}",
                        a.contour.rank, a.limit.rank
                    ));
                }
            }
            if !b.hypotheses_verified() {
                notes.push("unverified hypotheses".to_string());
            }
            Ok(VisibilityRow {
                lambda,
                dim_ker: ev.multiplicity,
                dim_r: dim,
                resonance,
                residue,
                gap,
                notes,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(VisibilityReport {
        selection: b.clone(),
        lambda_max,
        rows,
        spectral_warnings: spectrum.warnings,
        options: *opts,
    })
}
