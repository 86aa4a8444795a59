//! One-sided (Hestenes) Jacobi SVD.
//!
//! Column pairs are rotated until mutually orthogonal; the column norms are
//! then the singular values and the accumulated rotations the right singular
//! vectors. Small singular values come out with high relative accuracy,
//! which is what rank decisions and nullspace extraction need.

use num_complex::Complex;

use super::Matrix;
use crate::scalar::Real;

const MAX_SWEEPS: usize = 80;

/// Singular values (descending) and, optionally, right singular vectors.
#[derive(Clone, Debug)]
pub struct Svd<T> {
    pub singular_values: Vec<T>,
    /// Column `j` is the right singular vector for `singular_values[j]`.
    pub v: Option<Matrix<T>>,
}

impl<T: Real> Svd<T> {
    pub fn max(&self) -> T {
        self.singular_values.first().copied().unwrap_or_else(T::zero)
    }

    pub fn min(&self) -> T {
        self.singular_values.last().copied().unwrap_or_else(T::zero)
    }

    /// Number of singular values strictly below `threshold`.
    pub fn count_below(&self, threshold: T) -> usize {
        self.singular_values.iter().filter(|&&s| s < threshold).count()
    }
}

pub fn svd<T: Real>(a: &Matrix<T>, want_v: bool) -> Svd<T> {
    let n = a.cols();
    // Work on columns: store A column-major as n vectors of length m;
    // pad to at least n rows so the nullspace of a wide matrix shows up.
    let m = a.rows().max(n);
    let mut cols: Vec<Vec<T>> = (0..n)
        .map(|j| {
            let mut c: Vec<T> = (0..a.rows()).map(|i| a[(i, j)]).collect();
            c.resize(m, T::zero());
            c
        })
        .collect();
    let mut v: Option<Vec<Vec<T>>> = want_v.then(|| {
        (0..n)
            .map(|j| (0..n).map(|i| if i == j { T::one() } else { T::zero() }).collect())
            .collect()
    });

    let eps = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = {
                    let (cp, cq) = (&cols[p], &cols[q]);
                    let mut alpha = T::zero();
                    let mut beta = T::zero();
                    let mut gamma = T::zero();
                    for i in 0..m {
                        alpha = alpha + cp[i] * cp[i];
                        beta = beta + cq[i] * cq[i];
                        gamma = gamma + cp[i] * cq[i];
                    }
                    (alpha, beta, gamma)
                };
                if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::of(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate(&mut cols, p, q, c, s);
                if let Some(v) = v.as_mut() {
                    rotate(v, p, q, c, s);
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<T> = cols
        .iter()
        .map(|c| c.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap_or(std::cmp::Ordering::Equal));
    let singular_values = order.iter().map(|&i| norms[i]).collect();
    let v = v.map(|v| {
        let mut out = Matrix::zeros(n, n);
        for (new_j, &old_j) in order.iter().enumerate() {
            for i in 0..n {
                out[(i, new_j)] = v[old_j][i];
            }
        }
        out
    });
    Svd { singular_values, v }
}

fn rotate<T: Real>(cols: &mut [Vec<T>], p: usize, q: usize, c: T, s: T) {
    let (left, right) = cols.split_at_mut(q);
    let (cp, cq) = (&mut left[p], &mut right[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}

pub fn singular_values<T: Real>(a: &Matrix<T>) -> Vec<T> {
    svd(a, false).singular_values
}

/// Singular values of a complex matrix via its real embedding
/// `[[Re A, -Im A], [Im A, Re A]]`, whose spectrum repeats each value twice.
pub fn complex_singular_values<T: Real>(a: &Matrix<Complex<T>>) -> Vec<T> {
    let (r, c) = (a.rows(), a.cols());
    let mut big = Matrix::zeros(2 * r, 2 * c);
    for i in 0..r {
        for j in 0..c {
            let z = a[(i, j)];
            big[(i, j)] = z.re;
            big[(i, j + c)] = -z.im;
            big[(i + r, j)] = z.im;
            big[(i + r, j + c)] = z.re;
        }
    }
    singular_values(&big).into_iter().step_by(2).collect()
}
