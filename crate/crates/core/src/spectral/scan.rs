use rayon::prelude::*;

use super::secular::assemble_secular;
use super::SpectralError;
use crate::graph::{betti, MetricGraph, Subgraph};
use crate::linalg::{singular_values, svd};
use crate::scalar::Real;

/// Knobs of [`eigenvalues_in`]. All are relative quantities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralOptions {
    /// Grid step as a fraction of `pi / (2 L_total)`.
    pub scan_factor: f64,
    /// Golden-section stops once the bracket is below `refine_rel_tol * max(1, k)`.
    pub refine_rel_tol: f64,
    /// A singular value counts as zero below `nullity_tol * sigma_max`.
    pub nullity_tol: f64,
    /// Accepted wavenumbers closer than `cluster_factor` bracket widths are merged with a warning.
    pub cluster_factor: f64,
    /// Keep the `(k, sigma_min)` grid trace in the result.
    pub record_scan: bool,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        Self {
            scan_factor: 0.1,
            refine_rel_tol: 1e-12,
            nullity_tol: 1e-8,
            cluster_factor: 10.0,
            record_scan: false,
        }
    }
}

impl SpectralOptions {
    /// Tolerances are floored a few ulps above machine precision of `T`.
    pub(crate) fn effective<T: Real>(&self) -> (T, T) {
        let floor = T::epsilon() * T::of(64.0);
        (
            T::of(self.refine_rel_tol).max(floor),
            T::of(self.nullity_tol).max(floor),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenvalue<T> {
    pub lambda: T,
    pub k: T,
    pub multiplicity: usize,
    /// Smallest singular value at the refined `k`.
    pub sigma_min: T,
    pub sigma_max: T,
    /// `nullity_tol * sigma_max`; `sigma_min / threshold` is the acceptance margin.
    pub threshold: T,
    /// Final golden-section bracket width (zero for `lambda = 0`).
    pub bracket_width: T,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpectralWarning<T> {
    /// Two refined minima fell within `cluster_factor` bracket widths; kept as one.
    Cluster { k_first: T, k_second: T },
    /// A singular value lies within a factor 10 of the rank threshold.
    AmbiguousThreshold { k: T, sigma: T, threshold: T },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T> {
    /// Ascending; the first entry is `lambda = 0` with multiplicity `beta0`.
    pub eigenvalues: Vec<Eigenvalue<T>>,
    pub warnings: Vec<SpectralWarning<T>>,
    pub grid_step: T,
    pub lambda_max: T,
    pub options: SpectralOptions,
    /// `(k, sigma_min)` on the grid when `options.record_scan` is set.
    pub scan: Vec<(T, T)>,
}

impl<T: Real> Spectrum<T> {
    /// Eigenvalue closest to `lambda`.
    pub fn nearest(&self, lambda: T) -> Option<&Eigenvalue<T>> {
        self.eigenvalues.iter().min_by(|a, b| {
            (a.lambda - lambda)
                .abs()
                .partial_cmp(&(b.lambda - lambda).abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    }

    /// Eigenvalues counted with multiplicity.
    pub fn count(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.multiplicity).sum()
    }
}

/// `(sigma_min, sigma_max)` of the secular system at `k`.
pub fn sigma_min<T: Real>(g: &MetricGraph, k: T) -> (T, T) {
    let s = singular_values(&assemble_secular(g, k).matrix);
    (
        s.last().copied().unwrap_or_else(T::zero),
        s.first().copied().unwrap_or_else(T::zero),
    )
}

fn golden_section<T: Real>(g: &MetricGraph, mut a: T, mut b: T, tol_rel: T) -> (T, T, usize) {
    let inv_phi = T::of((5f64.sqrt() - 1.0) / 2.0);
    let f = |k: T| sigma_min(g, k).0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let mut it = 0;
    while b - a > tol_rel * T::one().max(b) && it < 400 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
        it += 1;
    }
    let k = if f1 <= f2 { x1 } else { x2 };
    (k, b - a, it)
}

fn ambiguity<T: Real>(sv: &[T], threshold: T, k: T, out: &mut Vec<SpectralWarning<T>>) {
    let ten = T::of(10.0);
    for &s in sv {
        if s > threshold / ten && s < threshold * ten {
            out.push(SpectralWarning::AmbiguousThreshold {
                k,
                sigma: s,
                threshold,
            });
        }
    }
}

/// Eigenvalues of the Kirchhoff Laplacian in `[0, lambda_max]`.
pub fn eigenvalues_in<T: Real>(
    g: &MetricGraph,
    lambda_max: T,
    opts: &SpectralOptions,
) -> Result<Spectrum<T>, SpectralError> {
    if !(lambda_max > T::zero()) || !lambda_max.is_finite() {
        return Err(SpectralError::NonpositiveCutoff(lambda_max.to_f64_lossy()));
    }
    let (refine_tol, null_tol) = opts.effective::<T>();
    let total: T = g.total_length();
    let h = T::of(opts.scan_factor) * T::PI() / (T::of(2.0) * total);
    let k_max = lambda_max.sqrt();
    let steps = (k_max / h).ceil().to_usize().unwrap_or(0) + 1;

    let grid: Vec<(T, T)> = (1..=steps)
        .into_par_iter()
        .map(|j| {
            let k = h * T::of(j as f64);
            (k, sigma_min(g, k).0)
        })
        .collect();

    let mut warnings = Vec::new();
    let mut found: Vec<Eigenvalue<T>> = Vec::new();
    // Interior local minima, non-strict on the left so plateaus are counted once.
    let brackets: Vec<(T, T)> = (1..grid.len().saturating_sub(1))
        .filter(|&j| grid[j].1 <= grid[j - 1].1 && grid[j].1 < grid[j + 1].1)
        .map(|j| (grid[j - 1].0, grid[j + 1].0))
        .collect();
    let refined: Vec<_> = brackets
        .par_iter()
        .map(|&(a, b)| {
            let (k, width, iterations) = golden_section(g, a, b, refine_tol);
            let sv = svd(&assemble_secular(g, k).matrix, false).singular_values;
            (k, width, iterations, sv)
        })
        .collect();
    for (k, width, iterations, sv) in refined {
        let sigma_max = sv[0];
        let threshold = null_tol * sigma_max;
        let smin = *sv.last().expect("nonempty system");
        if !(smin < threshold) || k > k_max + width {
            continue;
        }
        ambiguity(&sv, threshold, k, &mut warnings);
        let multiplicity = sv.iter().filter(|&&s| s < threshold).count();
        let ev = Eigenvalue {
            lambda: k * k,
            k,
            multiplicity,
            sigma_min: smin,
            sigma_max,
            threshold,
            bracket_width: width,
            iterations,
        };
        if let Some(prev) = found.last_mut() {
            let close = T::of(opts.cluster_factor) * prev.bracket_width.max(width);
            if k - prev.k < close {
                warnings.push(SpectralWarning::Cluster {
                    k_first: prev.k,
                    k_second: k,
                });
                if ev.sigma_min < prev.sigma_min {
                    let m = prev.multiplicity.max(ev.multiplicity);
                    *prev = ev;
                    prev.multiplicity = m;
                } else {
                    prev.multiplicity = prev.multiplicity.max(ev.multiplicity);
                }
                continue;
            }
        }
        found.push(ev);
    }

    let beta0 = betti(&Subgraph::full(g)).beta0;
    let sv0 = singular_values(&assemble_secular(g, T::zero()).matrix);
    let zero = Eigenvalue {
        lambda: T::zero(),
        k: T::zero(),
        multiplicity: beta0,
        sigma_min: *sv0.last().expect("nonempty system"),
        sigma_max: sv0[0],
        threshold: null_tol * sv0[0],
        bracket_width: T::zero(),
        iterations: 0,
    };
    let mut eigenvalues = vec![zero];
    eigenvalues.extend(found);

    Ok(Spectrum {
        eigenvalues,
        warnings,
        grid_step: h,
        lambda_max,
        options: *opts,
        scan: if opts.record_scan { grid } else { Vec::new() },
    })
}
