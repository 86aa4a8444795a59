use num_complex::Complex;
use rayon::prelude::*;

use super::tw::{frobenius, tw_matrix, TwOptions};
use super::{VertexSelection, WeylError};
use crate::graph::MetricGraph;
use crate::linalg::{complex_singular_values, Matrix};
use crate::scalar::Real;
use crate::spectral::Spectrum;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidueOptions {
    /// Upper bound on the contour radius; the radius is `min(gap / 2, r_max)`.
    pub r_max: f64,
    pub nodes_initial: usize,
    pub nodes_max: usize,
    /// Node doubling stops when the estimate changes by less than this (relative).
    pub contour_tol: f64,
    /// Singular values below `rank_tol * sigma_1` do not count toward the rank.
    pub rank_tol: f64,
    /// Nor do those below `abs_floor * ||M_B(lambda + r)||`.
    pub abs_floor: f64,
    /// The limit method samples at `limit_radius_factor * r` and two halvings.
    pub limit_radius_factor: f64,
    /// Gaps below `min_gap * max(1, lambda)` are rejected.
    pub min_gap: f64,
    pub cond_max: f64,
}

impl Default for ResidueOptions {
    fn default() -> Self {
        Self {
            r_max: 0.5,
            nodes_initial: 64,
            nodes_max: 8192,
            contour_tol: 1e-10,
            rank_tol: 1e-8,
            abs_floor: 1e-12,
            limit_radius_factor: 1e-3,
            min_gap: 1e-8,
            cond_max: 1e12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueMethod {
    /// Trapezoidal rule on a circle around the eigenvalue.
    Contour,
    /// `(mu - lambda) M_B(mu)` at `lambda +- i rho`, extrapolated to `rho = 0`.
    Limit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueEstimate<T> {
    pub lambda: T,
    pub method: ResidueMethod,
    pub matrix: Matrix<Complex<T>>,
    pub rank: usize,
    /// Descending.
    pub singular_values: Vec<T>,
    pub threshold: T,
    /// Contour radius, or the largest sampling distance of the limit method.
    pub radius: T,
    /// Evaluations of `M_B` used.
    pub nodes: usize,
}

impl<T: Real> ResidueEstimate<T> {
    pub fn norm(&self) -> T {
        self.singular_values.first().copied().unwrap_or_else(T::zero)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueAnalysis<T> {
    pub lambda: T,
    pub gap: T,
    /// Largest singular value of `M_B(lambda + r)`.
    pub scale: T,
    pub contour: ResidueEstimate<T>,
    pub limit: ResidueEstimate<T>,
}

impl<T: Real> ResidueAnalysis<T> {
    pub fn ranks_agree(&self) -> bool {
        self.contour.rank == self.limit.rank
    }

    /// The contour rank is authoritative.
    pub fn rank(&self) -> usize {
        self.contour.rank
    }
}

/// Distance from `spectrum.eigenvalues[index]` to its neighbours. Past the last
/// eigenvalue only the cutoff is known, so the distance to it is a lower bound.
pub fn spectral_gap<T: Real>(spectrum: &Spectrum<T>, index: usize) -> T {
    let ev = &spectrum.eigenvalues;
    let here = ev[index].lambda;
    let above = ev
        .get(index + 1)
        .map_or(spectrum.lambda_max - here, |e| e.lambda - here);
    match index.checked_sub(1) {
        Some(i) => above.min(here - ev[i].lambda),
        None => above,
    }
}

fn rank_of<T: Real>(m: &Matrix<Complex<T>>, rank_tol: T, floor: T) -> (usize, Vec<T>, T) {
    let sv = complex_singular_values(m);
    let s1 = sv.first().copied().unwrap_or_else(T::zero);
    let threshold = (rank_tol * s1).max(floor);
    let rank = sv.iter().filter(|&&s| s > threshold).count();
    (rank, sv, threshold)
}

fn scaled_add<T: Real>(acc: &mut Matrix<Complex<T>>, m: &Matrix<Complex<T>>, w: Complex<T>) {
    for i in 0..acc.rows() {
        for j in 0..acc.cols() {
            acc[(i, j)] = acc[(i, j)] + m[(i, j)] * w;
        }
    }
}

pub fn residue_estimates<T: Real>(
    g: &MetricGraph,
    b: &VertexSelection,
    lambda: T,
    gap: T,
    opts: &ResidueOptions,
) -> Result<ResidueAnalysis<T>, WeylError> {
    if !(gap > T::of(opts.min_gap) * T::one().max(lambda)) {
        return Err(WeylError::GapTooSmall {
            lambda: lambda.to_f64_lossy(),
            gap: gap.to_f64_lossy(),
        });
    }
    let tw = TwOptions {
        cond_max: opts.cond_max,
    };
    let r = (gap / T::of(2.0)).min(T::of(opts.r_max));
    let m = b.len();
    let sample = |mu: Complex<T>| tw_matrix(g, b, mu, &tw).map(|s| s.matrix);

    let scale = complex_singular_values(&sample(Complex::new(lambda + r, T::zero()))?)[0];
    let floor = T::of(opts.abs_floor) * scale;
    let rank_tol = T::of(opts.rank_tol);

    // Contour: Res = (1/N) sum_j M(mu_j) r e^{i theta_j}; doubling reuses old nodes.
    let two_pi = T::PI() * T::of(2.0);
    let node_sum = |count: usize, offset: T| -> Result<Matrix<Complex<T>>, WeylError> {
        let parts: Vec<Result<Matrix<Complex<T>>, WeylError>> = (0..count)
            .into_par_iter()
            .map(|j| {
                let theta = two_pi * (T::of(j as f64) + offset) / T::of(count as f64);
                let w = Complex::from_polar(r, theta);
                let mut out = Matrix::zeros(m, m);
                scaled_add(&mut out, &sample(Complex::from(lambda) + w)?, w);
                Ok(out)
            })
            .collect();
        let mut acc = Matrix::zeros(m, m);
        for p in parts {
            scaled_add(&mut acc, &p?, Complex::from(T::one()));
        }
        Ok(acc)
    };
    let mut n = opts.nodes_initial.max(4);
    let mut sum = node_sum(n, T::zero())?;
    let mut estimate = sum.map(|z| *z / T::of(n as f64));
    let mut evaluations = n;
    while 2 * n <= opts.nodes_max {
        let extra = node_sum(n, T::of(0.5))?;
        evaluations += n;
        scaled_add(&mut sum, &extra, Complex::from(T::one()));
        n *= 2;
        let next = sum.map(|z| *z / T::of(n as f64));
        let mut diff = next.clone();
        scaled_add(&mut diff, &estimate, Complex::from(-T::one()));
        let converged = frobenius(&diff) <= T::of(opts.contour_tol) * frobenius(&next).max(floor);
        estimate = next;
        if converged {
            break;
        }
    }
    let (rank, sv, threshold) = rank_of(&estimate, rank_tol, floor);
    let contour = ResidueEstimate {
        lambda,
        method: ResidueMethod::Contour,
        matrix: estimate,
        rank,
        singular_values: sv,
        threshold,
        radius: r,
        nodes: evaluations,
    };

    // Limit: symmetric samples cancel odd powers of rho; fit R + c rho^2.
    let rho0 = r * T::of(opts.limit_radius_factor);
    let rhos = [rho0, rho0 / T::of(2.0), rho0 / T::of(4.0)];
    let mut ys = Vec::with_capacity(3);
    for &rho in &rhos {
        let up = sample(Complex::new(lambda, rho))?;
        let down = sample(Complex::new(lambda, -rho))?;
        let mut y = Matrix::zeros(m, m);
        let half_i_rho = Complex::new(T::zero(), rho / T::of(2.0));
        scaled_add(&mut y, &up, half_i_rho);
        scaled_add(&mut y, &down, -half_i_rho);
        ys.push(y);
    }
    let xs: Vec<T> = rhos.iter().map(|&p| p * p).collect();
    let nf = T::of(3.0);
    let sx = xs.iter().fold(T::zero(), |a, &x| a + x);
    let sxx = xs.iter().fold(T::zero(), |a, &x| a + x * x);
    let det = nf * sxx - sx * sx;
    let mut fit = Matrix::zeros(m, m);
    for (x, y) in xs.iter().zip(&ys) {
        // intercept weight of sample i in the least-squares line
        let w = (sxx - sx * *x) / det;
        scaled_add(&mut fit, y, Complex::from(w));
    }
    let (rank, sv, threshold) = rank_of(&fit, rank_tol, floor);
    let limit = ResidueEstimate {
        lambda,
        method: ResidueMethod::Limit,
        matrix: fit,
        rank,
        singular_values: sv,
        threshold,
        radius: rho0,
        nodes: 6,
    };
    Ok(ResidueAnalysis {
        lambda,
        gap,
        scale,
        contour,
        limit,
    })
}

/// Both estimates; rank disagreement is an error.
pub fn residue<T: Real>(
    g: &MetricGraph,
    b: &VertexSelection,
    lambda: T,
    gap: T,
    opts: &ResidueOptions,
) -> Result<ResidueAnalysis<T>, WeylError> {
    let a = residue_estimates(g, b, lambda, gap, opts)?;
    if !a.ranks_agree() {
        return Err(WeylError::MethodDisagreement {
            lambda: lambda.to_f64_lossy(),
            contour: a.contour.rank,
            limit: a.limit.rank,
        });
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphSpec;
    use crate::weyl::{select_b, SelectionMode};
    use std::f64::consts::PI;

    #[test]
    fn simple_interval_eigenvalue_has_rank_one() {
        let g = GraphSpec::new()
            .unit("pi", PI)
            .vertices(["a", "b"])
            .edge("e", "a", "b", (1, 1), "pi")
            .build()
            .unwrap();
        let b = select_b(&g, SelectionMode::Auto).unwrap();
        let a = residue(&g, &b, 1.0f64, 1.0, &ResidueOptions::default()).unwrap();
        assert_eq!(a.rank(), 1);
        assert!(a.ranks_agree());
        // cos(x) normalised: residue entries are -phi(v_k) phi(v_l) = -(2/pi)(+-1)
        let expect: f64 = 2.0 / PI;
        assert!((a.contour.matrix[(0, 0)].re.abs() - expect).abs() < 1e-9);
        assert!((a.limit.matrix[(0, 0)].re.abs() - expect).abs() < 1e-7);
    }

    #[test]
    fn zero_has_rank_beta0() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .vertices(["a", "b", "c", "d"])
            .edge("e1", "a", "b", (1, 1), "one")
            .edge("e2", "c", "d", (1, 1), "one")
            .build()
            .unwrap();
        let b = select_b(&g, SelectionMode::Auto).unwrap();
        let a = residue(&g, &b, 0.0, PI * PI, &ResidueOptions::default()).unwrap();
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn tiny_gap_is_rejected() {
        let g = GraphSpec::new()
            .unit("one", 1.0)
            .vertices(["a", "b"])
            .edge("e", "a", "b", (1, 1), "one")
            .build()
            .unwrap();
        let b = select_b(&g, SelectionMode::Auto).unwrap();
        assert!(matches!(
            residue(&g, &b, PI * PI, 1e-12, &ResidueOptions::default()),
            Err(WeylError::GapTooSmall { .. })
        ));
    }
}
